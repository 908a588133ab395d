#include "proxregret/comparators.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "proxregret/error.h"

namespace proxregret {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::VectorXd SymmetricEigenvalues(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

void RequireRhoBelowOne(const Comparator& f) {
  if (!(f.rho() < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "prox requires rho < 1 (got " + std::to_string(f.rho()) + ")");
  }
}

}  // namespace

const char* ComparatorKindName(ComparatorKind kind) {
  switch (kind) {
    case ComparatorKind::kIndicatorPoint: return "indicator-point";
    case ComparatorKind::kIndicatorSet: return "indicator-set";
    case ComparatorKind::kLinear: return "linear";
    case ComparatorKind::kQuadratic: return "quadratic";
    case ComparatorKind::kConstant: return "constant";
  }
  return "unknown";
}

double SpectralNorm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

bool IsSymmetric(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return (a - a.transpose()).cwiseAbs().maxCoeff() <= tol * scale;
}

Comparator::Comparator(ComparatorKind kind, int dimension)
    : kind_(kind), dimension_(dimension), id_(ComparatorKindName(kind)) {
  if (dimension <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "comparator dimension must be > 0");
  }
}

Comparator Comparator::IndicatorPoint(Vector point) {
  Comparator f(ComparatorKind::kIndicatorPoint, static_cast<int>(point.size()));
  RequireFinite(point, "indicator point");
  f.point_ = std::move(point);
  return f;
}

Comparator Comparator::IndicatorSet(ConvexSet subset) {
  Comparator f(ComparatorKind::kIndicatorSet, subset.dimension());
  f.subset_ = std::make_shared<const ConvexSet>(std::move(subset));
  return f;
}

Comparator Comparator::Linear(Vector direction) {
  Comparator f(ComparatorKind::kLinear, static_cast<int>(direction.size()));
  RequireFinite(direction, "linear direction");
  f.vec_ = std::move(direction);
  return f;
}

Comparator Comparator::Quadratic(Matrix q, Vector c, std::optional<double> rho) {
  const int d = static_cast<int>(c.size());
  Comparator f(ComparatorKind::kQuadratic, d);
  if (q.rows() != d || q.cols() != d) {
    throw Error(ErrorCode::kDimensionMismatch, "quadratic Q must be d x d");
  }
  RequireFinite(c, "quadratic c");
  if (!q.allFinite()) throw Error(ErrorCode::kNonFinite, "quadratic Q");
  if (!IsSymmetric(q, 1e-10)) {
    throw Error(ErrorCode::kInvalidArgument, "quadratic Q must be symmetric");
  }
  q = 0.5 * (q + q.transpose());
  const Eigen::VectorXd eig = SymmetricEigenvalues(q);
  const double lambda_min = eig.minCoeff();
  const double needed = std::max(0.0, -lambda_min);
  f.rho_ = rho.value_or(needed);
  if (f.rho_ + 1e-12 < needed) {
    throw Error(ErrorCode::kInvalidArgument,
                "declared rho is below -lambda_min(Q)");
  }
  if (!(f.rho_ < 1.0) || f.rho_ < 0.0) {
    throw Error(ErrorCode::kInvalidArgument,
                "quadratic comparator needs 0 <= rho < 1");
  }
  f.alpha_ = std::max(0.0, lambda_min);
  f.smoothness_ = eig.cwiseAbs().maxCoeff();
  f.q_ = std::move(q);
  f.vec_ = std::move(c);
  return f;
}

Comparator Comparator::Constant(int dimension, double value) {
  Comparator f(ComparatorKind::kConstant, dimension);
  f.constant_ = value;
  return f;
}

Comparator Comparator::WithId(std::string id) const {
  Comparator out = *this;
  out.id_ = std::move(id);
  return out;
}

double Comparator::Evaluate(const Vector& x) const {
  RequireDimension(x, dimension_, "comparator argument");
  switch (kind_) {
    case ComparatorKind::kIndicatorPoint:
      return (x - point_).norm() <= kTolerance ? 0.0 : kInf;
    case ComparatorKind::kIndicatorSet:
      return subset_->Contains(x) ? 0.0 : kInf;
    case ComparatorKind::kLinear:
      return vec_.dot(x);
    case ComparatorKind::kQuadratic:
      return 0.5 * x.dot(q_ * x) + vec_.dot(x);
    case ComparatorKind::kConstant:
      return constant_;
  }
  return kInf;
}

Vector Comparator::Gradient(const Vector& x) const {
  RequireDimension(x, dimension_, "comparator argument");
  switch (kind_) {
    case ComparatorKind::kLinear: return vec_;
    case ComparatorKind::kQuadratic: return q_ * x + vec_;
    case ComparatorKind::kConstant: return Vector::Zero(dimension_);
    default: break;
  }
  throw Error(ErrorCode::kUnsupported, "indicators have no gradient");
}

ProxResult Prox(const Comparator& f, const ConvexSet& set, const Vector& x) {
  RequireRhoBelowOne(f);
  RequireDimension(x, set.dimension(), "prox input");
  RequireDimension(x, f.dimension(), "prox input");
  RequireFinite(x, "prox input");

  ProxResult out;
  switch (f.kind()) {
    case ComparatorKind::kIndicatorPoint:
      if (!set.Contains(f.point())) {
        throw Error(ErrorCode::kComparatorInfeasible,
                    "indicator point lies outside the feasible set");
      }
      out.point = f.point();
      out.witness_subgradient = x - out.point;
      break;
    case ComparatorKind::kIndicatorSet:
      out.point = f.subset().Project(x);
      out.witness_subgradient = x - out.point;
      break;
    case ComparatorKind::kLinear:
      out.point = set.Project(x - f.direction());
      out.witness_subgradient = f.direction();
      break;
    case ComparatorKind::kConstant:
      // Members are returned bit-for-bit so constant comparators carry
      // exactly zero regret.
      out.point = set.Contains(x) ? x : set.Project(x);
      out.witness_subgradient = Vector::Zero(x.size());
      break;
    case ComparatorKind::kQuadratic:
      if (set.kind() != SetKind::kWholeSpace) {
        return ProxIterative(f, set, x);
      }
      {
        const Matrix system =
            Matrix::Identity(x.size(), x.size()) + f.q();
        out.point = system.ldlt().solve(x - f.c());
        out.witness_subgradient = f.Gradient(out.point);
      }
      break;
  }
  out.residual = CheckProxOptimality(f, set, x, out.point);
  return out;
}

ProxResult ProxIterative(const Comparator& f, const ConvexSet& set,
                         const Vector& x, double tol, int max_iter) {
  RequireRhoBelowOne(f);
  RequireDimension(x, set.dimension(), "prox input");
  RequireFinite(x, "prox input");
  if (!(tol > 0.0)) throw Error(ErrorCode::kInvalidArgument, "tol must be > 0");

  if (f.kind() == ComparatorKind::kIndicatorPoint ||
      f.kind() == ComparatorKind::kIndicatorSet) {
    // Projected gradient on an indicator degenerates to one projection.
    return Prox(f, set, x);
  }

  const double step = 1.0 / (1.0 + f.smoothness());
  Vector y = set.Project(x);
  double displacement = std::numeric_limits<double>::infinity();
  int it = 0;
  for (; it < max_iter; ++it) {
    const Vector grad = f.Gradient(y) + (y - x);
    Vector next = set.Project(y - step * grad);
    displacement = (next - y).norm();
    y = std::move(next);
    if (displacement <= tol) break;
  }
  if (displacement > tol) {
    std::ostringstream os;
    os << "no convergence after " << max_iter << " iterations (displacement "
       << displacement << ")";
    throw ProxNonconvergence(os.str(), displacement);
  }
  ProxResult out;
  out.point = std::move(y);
  out.witness_subgradient = f.Gradient(out.point);
  out.iterations = it + 1;
  out.residual = CheckProxOptimality(f, set, x, out.point);
  return out;
}

double CheckProxOptimality(const Comparator& f, const ConvexSet& set,
                           const Vector& x, const Vector& p) {
  RequireDimension(p, set.dimension(), "prox candidate");
  if (!std::isfinite(f.Evaluate(p))) return kInf;

  switch (f.kind()) {
    case ComparatorKind::kIndicatorPoint:
      // v = x - p lies in the normal cone of {x0}, which is everything.
      return 0.0;
    case ComparatorKind::kIndicatorSet:
      // v = x - p is a normal-cone element of S at p iff p = Pi_S(x);
      // the sup over S of <x - p, s - p> measures the violation.
      return std::max(0.0, f.subset().SupportGap(x - p, p));
    default:
      break;
  }
  const Vector r = x - f.Gradient(p) - p;
  if (set.kind() == SetKind::kWholeSpace) {
    return r.size() == 0 ? 0.0 : r.cwiseAbs().maxCoeff();
  }
  return std::max(0.0, set.SupportGap(r, p));
}

double KeyInequalityGap(const Comparator& f, const ConvexSet& set,
                        const Vector& x, const Vector& p) {
  if (!(f.rho() < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "key inequality needs rho < 1");
  }
  const double fp = f.Evaluate(p);
  if (!std::isfinite(fp)) {
    throw Error(ErrorCode::kComparatorInfeasible, "f(p) is +infinity");
  }
  const Vector px = Prox(f, set, x).point;
  const double fpx = f.Evaluate(px);
  const double rhs =
      2.0 * fp - 2.0 * fpx - (1.0 - f.rho()) * (p - px).squaredNorm();
  const double lhs = (x - px).squaredNorm() - (x - p).squaredNorm();
  return rhs - lhs;
}

Comparator AffineToComparator(const Matrix& a, const Vector& b) {
  const Eigen::Index d = b.size();
  if (a.rows() != d || a.cols() != d) {
    throw Error(ErrorCode::kDimensionMismatch, "affine map: A must be d x d");
  }
  if (!IsSymmetric(a, 1e-10)) {
    throw Error(ErrorCode::kInvalidArgument, "affine map: A must be symmetric");
  }
  const Matrix sym = 0.5 * (a + a.transpose());
  const Eigen::VectorXd eig = SymmetricEigenvalues(sym);
  const double lo = eig.minCoeff();
  const double hi = eig.maxCoeff();
  const bool convex_case = lo > 0.0 && hi <= 1.0 + 1e-12;
  const bool smooth_case = lo > 0.5;
  if (!convex_case && !smooth_case) {
    std::ostringstream os;
    os << "eigenvalues in [" << lo << ", " << hi
       << "] satisfy neither 0 < A <= I nor A > I/2";
    throw Error(ErrorCode::kNotProxRepresentable, os.str());
  }
  const Matrix inv = sym.ldlt().solve(Matrix::Identity(d, d));
  Matrix q = inv - Matrix::Identity(d, d);
  q = 0.5 * (q + q.transpose());
  const Vector c = -(inv * b);
  if (q.isZero(1e-12) && c.isZero(1e-12)) {
    return Comparator::Constant(static_cast<int>(d)).WithId("affine");
  }
  double rho = 0.0;
  if (!convex_case) {
    rho = SpectralNorm(q);
  } else {
    // Q is PSD up to rounding; absorb the rounding into rho.
    rho = std::max(0.0, -SymmetricEigenvalues(q).minCoeff());
  }
  return Comparator::Quadratic(std::move(q), c, rho).WithId("affine");
}

AffineMap InterpolateEndomorphism(const Matrix& a, const Vector& b,
                                  double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "interpolation needs 0 < alpha <= 1");
  }
  if (a.rows() != b.size() || a.cols() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "affine map: A must be d x d");
  }
  AffineMap out;
  out.a = (1.0 - alpha) * Matrix::Identity(a.rows(), a.cols()) + alpha * a;
  out.b = alpha * b;
  return out;
}

double InterpolationWeight(const Matrix& a) {
  return 1.0 / (3.0 * (1.0 + SpectralNorm(a)));
}

double BfBoundAffine(const Vector& b, double radius) {
  if (!(radius >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "radius must be >= 0");
  }
  return 3.0 * radius * radius + radius * b.norm();
}

}  // namespace proxregret
