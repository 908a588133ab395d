#include "proxregret/geometry.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "proxregret/error.h"

namespace proxregret {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "dimension mismatch";
    case ErrorCode::kNonFinite: return "non-finite input";
    case ErrorCode::kUnbounded: return "unbounded";
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kProxNonconvergence: return "prox-nonconvergence";
    case ErrorCode::kComparatorInfeasible: return "comparator infeasible at p";
    case ErrorCode::kNotProxRepresentable: return "not prox-representable";
    case ErrorCode::kNotEndomorphism: return "not an endomorphism";
    case ErrorCode::kProtocol: return "protocol error";
    case ErrorCode::kStepSizeViolation:
      return "step size violates social-regret condition";
    case ErrorCode::kConstantsViolated: return "constants violated";
    case ErrorCode::kEmptyFamily: return "empty family";
    case ErrorCode::kNotOgTrace: return "not an OG trace";
    case ErrorCode::kBoundaryDivergence: return "boundary divergence";
    case ErrorCode::kUnsupported: return "unsupported";
  }
  return "unknown";
}

double Norm(const Vector& x, NormKind which) {
  RequireFinite(x, "norm argument");
  switch (which) {
    case NormKind::kEuclidean: return x.norm();
    case NormKind::kMax: return x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff();
    case NormKind::kOne: return x.cwiseAbs().sum();
  }
  return 0.0;
}

NormKind DualNorm(NormKind which) {
  switch (which) {
    case NormKind::kEuclidean: return NormKind::kEuclidean;
    case NormKind::kMax: return NormKind::kOne;
    case NormKind::kOne: return NormKind::kMax;
  }
  return NormKind::kEuclidean;
}

void RequireFinite(const Vector& x, const char* what) {
  if (!x.allFinite()) {
    throw Error(ErrorCode::kNonFinite, std::string(what) + " has NaN/Inf");
  }
}

void RequireDimension(const Vector& x, int dimension, const char* what) {
  if (x.size() != dimension) {
    std::ostringstream os;
    os << what << " has dimension " << x.size() << ", expected " << dimension;
    throw Error(ErrorCode::kDimensionMismatch, os.str());
  }
}

const char* SetKindName(SetKind kind) {
  switch (kind) {
    case SetKind::kBox: return "box";
    case SetKind::kBall: return "ball";
    case SetKind::kSimplex: return "simplex";
    case SetKind::kWholeSpace: return "whole-space";
  }
  return "unknown";
}

Vector ProjectOntoSimplex(const Vector& x, double mass) {
  const Eigen::Index d = x.size();
  std::vector<double> sorted(x.data(), x.data() + d);
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  // Largest k with sorted[k] - (cumsum_k - mass) / (k + 1) > 0.
  double cumsum = 0.0;
  double theta = 0.0;
  for (Eigen::Index k = 0; k < d; ++k) {
    cumsum += sorted[k];
    const double candidate = (cumsum - mass) / static_cast<double>(k + 1);
    if (sorted[k] - candidate > 0.0) theta = candidate;
  }
  return (x.array() - theta).max(0.0).matrix();
}

ConvexSet::ConvexSet(SetKind kind, int dimension)
    : kind_(kind), dimension_(dimension) {
  if (dimension <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "set dimension must be positive");
  }
}

ConvexSet ConvexSet::Box(Vector lower, Vector upper) {
  ConvexSet set(SetKind::kBox, static_cast<int>(lower.size()));
  RequireDimension(upper, set.dimension_, "box upper bound");
  RequireFinite(lower, "box lower bound");
  RequireFinite(upper, "box upper bound");
  if ((upper.array() < lower.array()).any()) {
    throw Error(ErrorCode::kInvalidArgument, "box has upper < lower");
  }
  set.lower_ = std::move(lower);
  set.upper_ = std::move(upper);
  set.diameter_ = (set.upper_ - set.lower_).norm();
  return set;
}

ConvexSet ConvexSet::Box(int dimension, double lower, double upper) {
  return Box(Vector::Constant(dimension, lower),
             Vector::Constant(dimension, upper));
}

ConvexSet ConvexSet::Ball(Vector center, double radius) {
  ConvexSet set(SetKind::kBall, static_cast<int>(center.size()));
  RequireFinite(center, "ball center");
  if (!(radius >= 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorCode::kInvalidArgument, "ball radius must be finite, >= 0");
  }
  set.center_ = std::move(center);
  set.radius_ = radius;
  set.diameter_ = 2.0 * radius;
  return set;
}

ConvexSet ConvexSet::Simplex(int dimension) {
  ConvexSet set(SetKind::kSimplex, dimension);
  set.center_ = Vector::Zero(dimension);
  set.diameter_ = dimension == 1 ? 0.0 : std::sqrt(2.0);
  return set;
}

ConvexSet ConvexSet::WholeSpace(int dimension) {
  ConvexSet set(SetKind::kWholeSpace, dimension);
  set.diameter_ = std::numeric_limits<double>::infinity();
  return set;
}

ConvexSet ConvexSet::Translated(const Vector& offset) const {
  RequireDimension(offset, dimension_, "translation offset");
  RequireFinite(offset, "translation offset");
  ConvexSet out = *this;
  out.translated_ = true;
  switch (kind_) {
    case SetKind::kBox:
      out.lower_ += offset;
      out.upper_ += offset;
      break;
    case SetKind::kBall:
    case SetKind::kSimplex:
      out.center_ += offset;
      break;
    case SetKind::kWholeSpace:
      break;
  }
  return out;
}

Vector ConvexSet::Project(const Vector& x) const {
  RequireDimension(x, dimension_, "projection input");
  RequireFinite(x, "projection input");
  switch (kind_) {
    case SetKind::kBox:
      return x.cwiseMax(lower_).cwiseMin(upper_);
    case SetKind::kBall: {
      const Vector diff = x - center_;
      const double dist = diff.norm();
      if (dist <= radius_) return x;
      return center_ + diff * (radius_ / dist);
    }
    case SetKind::kSimplex:
      return center_ + ProjectOntoSimplex(x - center_);
    case SetKind::kWholeSpace:
      return x;
  }
  return x;
}

bool ConvexSet::Contains(const Vector& x, double tol) const {
  if (x.size() != dimension_ || !x.allFinite()) return false;
  switch (kind_) {
    case SetKind::kBox:
      return ((x - lower_).array() >= -tol).all() &&
             ((upper_ - x).array() >= -tol).all();
    case SetKind::kBall:
      return (x - center_).norm() <= radius_ + tol;
    case SetKind::kSimplex: {
      const Vector y = x - center_;
      return (y.array() >= -tol).all() && std::abs(y.sum() - 1.0) <= tol;
    }
    case SetKind::kWholeSpace:
      return true;
  }
  return false;
}

double ConvexSet::Diameter() const {
  if (!bounded()) throw Error(ErrorCode::kUnbounded, "whole-space diameter");
  return diameter_;
}

double ConvexSet::MaxNorm() const {
  switch (kind_) {
    case SetKind::kBox:
      return lower_.cwiseAbs().cwiseMax(upper_.cwiseAbs()).norm();
    case SetKind::kBall:
      return center_.norm() + radius_;
    case SetKind::kSimplex: {
      // Farthest vertex from the origin.
      double best = 0.0;
      for (int i = 0; i < dimension_; ++i) {
        Vector v = center_;
        v[i] += 1.0;
        best = std::max(best, v.norm());
      }
      return best;
    }
    case SetKind::kWholeSpace:
      break;
  }
  throw Error(ErrorCode::kUnbounded, "whole-space has no maximal norm");
}

Vector ConvexSet::Center() const {
  switch (kind_) {
    case SetKind::kBox: return 0.5 * (lower_ + upper_);
    case SetKind::kBall: return center_;
    case SetKind::kSimplex:
      return center_ + Vector::Constant(dimension_, 1.0 / dimension_);
    case SetKind::kWholeSpace: return Vector::Zero(dimension_);
  }
  return Vector::Zero(dimension_);
}

Vector ConvexSet::ArgminLinear(const Vector& c) const {
  RequireDimension(c, dimension_, "linear objective");
  RequireFinite(c, "linear objective");
  switch (kind_) {
    case SetKind::kBox: {
      Vector out(dimension_);
      for (int i = 0; i < dimension_; ++i) {
        out[i] = c[i] > 0.0 ? lower_[i] : upper_[i];
      }
      return out;
    }
    case SetKind::kBall: {
      const double n = c.norm();
      if (n == 0.0) return center_;
      return center_ - c * (radius_ / n);
    }
    case SetKind::kSimplex: {
      Eigen::Index best;
      c.minCoeff(&best);
      Vector out = center_;
      out[best] += 1.0;
      return out;
    }
    case SetKind::kWholeSpace:
      if (c.isZero(0.0)) return Vector::Zero(dimension_);
      break;
  }
  throw Error(ErrorCode::kUnbounded, "linear objective unbounded below");
}

double ConvexSet::SupportGap(const Vector& c, const Vector& p) const {
  if (kind_ == SetKind::kWholeSpace) {
    return c.isZero(0.0) ? 0.0 : std::numeric_limits<double>::infinity();
  }
  const Vector best = ArgminLinear(-c);
  return c.dot(best - p);
}

std::vector<Vector> ConvexSet::ExtremePoints() const {
  std::vector<Vector> points;
  if (kind_ == SetKind::kSimplex) {
    for (int i = 0; i < dimension_; ++i) {
      Vector v = center_;
      v[i] += 1.0;
      points.push_back(std::move(v));
    }
  } else if (kind_ == SetKind::kBox &&
             dimension_ <= kMaxEnumerableBoxDimension) {
    const std::uint32_t count = 1u << dimension_;
    points.reserve(count);
    for (std::uint32_t mask = 0; mask < count; ++mask) {
      Vector v(dimension_);
      for (int i = 0; i < dimension_; ++i) {
        v[i] = (mask >> i) & 1u ? upper_[i] : lower_[i];
      }
      points.push_back(std::move(v));
    }
  }
  return points;
}

Vector ConvexSet::Sample(std::mt19937_64& rng) const {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  Vector out(dimension_);
  switch (kind_) {
    case SetKind::kBox:
      for (int i = 0; i < dimension_; ++i) {
        out[i] = lower_[i] + uniform(rng) * (upper_[i] - lower_[i]);
      }
      return out;
    case SetKind::kBall: {
      for (int i = 0; i < dimension_; ++i) out[i] = normal(rng);
      const double n = out.norm();
      const double r = radius_ * std::pow(uniform(rng), 1.0 / dimension_);
      if (n == 0.0) return center_;
      return center_ + out * (r / n);
    }
    case SetKind::kSimplex: {
      std::exponential_distribution<double> expo(1.0);
      for (int i = 0; i < dimension_; ++i) out[i] = expo(rng);
      return center_ + out / out.sum();
    }
    case SetKind::kWholeSpace:
      for (int i = 0; i < dimension_; ++i) out[i] = normal(rng);
      return out;
  }
  return out;
}

std::string ConvexSet::Describe() const {
  std::ostringstream os;
  os << SetKindName(kind_) << "(" << dimension_ << ")";
  if (translated_) os << "+offset";
  return os.str();
}

}  // namespace proxregret
