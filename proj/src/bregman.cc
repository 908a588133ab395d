#include "proxregret/bregman.h"

#include <cmath>
#include <limits>
#include <sstream>

#include "proxregret/error.h"

namespace proxregret {
namespace {

// Exponentiate log-weights after shifting by their max, renormalize onto the
// simplex and floor at kEntropyFloor.
Vector SoftmaxFromLogits(const Vector& logits) {
  const double shift = logits.maxCoeff();
  Vector w = (logits.array() - shift).exp().matrix();
  w /= w.sum();
  return w.cwiseMax(kEntropyFloor);
}

void RequirePositive(const Vector& x, const char* what) {
  if ((x.array() <= 0.0).any()) {
    throw Error(ErrorCode::kBoundaryDivergence,
                std::string(what) + " must be strictly positive");
  }
}

Vector SafeLog(const Vector& x) {
  return x.cwiseMax(kEntropyFloor).array().log().matrix();
}

double EntropyResidual(const Vector& x, const Vector& v, const Vector& p) {
  const Vector r = SafeLog(x) - v - SafeLog(p);
  return std::max(0.0, r.maxCoeff() - r.dot(p));
}

}  // namespace

const char* MirrorKindName(MirrorKind kind) {
  switch (kind) {
    case MirrorKind::kSquaredEuclidean: return "squared-euclidean";
    case MirrorKind::kNegativeEntropy: return "negative-entropy";
  }
  return "unknown";
}

MirrorMap MirrorMap::SquaredEuclidean(ConvexSet domain) {
  return MirrorMap(MirrorKind::kSquaredEuclidean, std::move(domain));
}

MirrorMap MirrorMap::NegativeEntropy(int dimension) {
  return MirrorMap(MirrorKind::kNegativeEntropy, ConvexSet::Simplex(dimension));
}

NormKind MirrorMap::primal_norm() const {
  return kind_ == MirrorKind::kNegativeEntropy ? NormKind::kOne
                                               : NormKind::kEuclidean;
}

double MirrorMap::Potential(const Vector& x) const {
  RequireDimension(x, dimension(), "mirror potential argument");
  if (kind_ == MirrorKind::kSquaredEuclidean) return 0.5 * x.squaredNorm();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] < 0.0) return std::numeric_limits<double>::infinity();
    if (x[i] > 0.0) sum += x[i] * std::log(x[i]);
  }
  return sum;
}

Vector MirrorMap::PotentialGradient(const Vector& x) const {
  RequireDimension(x, dimension(), "mirror gradient argument");
  if (kind_ == MirrorKind::kSquaredEuclidean) return x;
  RequirePositive(x, "entropy gradient argument");
  return (x.array().log() + 1.0).matrix();
}

double BregmanDivergence(const MirrorMap& map, const Vector& x,
                         const Vector& y) {
  RequireDimension(x, map.dimension(), "divergence first argument");
  RequireDimension(y, map.dimension(), "divergence second argument");
  RequireFinite(x, "divergence first argument");
  RequireFinite(y, "divergence second argument");
  if (map.kind() == MirrorKind::kSquaredEuclidean) {
    return 0.5 * (x - y).squaredNorm();
  }
  RequirePositive(y, "divergence base point");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] < 0.0) {
      throw Error(ErrorCode::kInvalidArgument, "entropy divergence needs x >= 0");
    }
    if (x[i] > 0.0) sum += x[i] * std::log(x[i] / y[i]);
    sum += y[i] - x[i];
  }
  return std::max(0.0, sum);
}

ProxResult BregmanProx(const Comparator& f, const MirrorMap& map,
                       const Vector& x, double tol, int max_iter) {
  if (map.kind() == MirrorKind::kSquaredEuclidean) {
    return Prox(f, map.domain(), x);
  }
  if (!(f.rho() < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "Bregman prox requires rho < 1");
  }
  RequireDimension(x, map.dimension(), "Bregman prox input");
  RequireFinite(x, "Bregman prox input");
  RequirePositive(x, "Bregman prox input");

  ProxResult out;
  switch (f.kind()) {
    case ComparatorKind::kConstant:
      out.point = x;
      out.witness_subgradient = Vector::Zero(x.size());
      out.residual = 0.0;
      return out;
    case ComparatorKind::kIndicatorPoint:
      if (!map.domain().Contains(f.point())) {
        throw Error(ErrorCode::kComparatorInfeasible,
                    "indicator point lies outside the simplex");
      }
      out.point = f.point();
      out.witness_subgradient = SafeLog(x) - SafeLog(out.point);
      out.residual = 0.0;
      return out;
    case ComparatorKind::kLinear:
      out.point = SoftmaxFromLogits(SafeLog(x) - f.direction());
      out.witness_subgradient = f.direction();
      out.residual = EntropyResidual(x, out.witness_subgradient, out.point);
      return out;
    case ComparatorKind::kIndicatorSet:
      throw Error(ErrorCode::kUnsupported,
                  "entropy Bregman prox of a set indicator");
    case ComparatorKind::kQuadratic:
      break;
  }

  // Mirror gradient on F(y) = f(y) + D(y|x): f is L-smooth in l1 with
  // L = max |Q_ij|, so F is (1 + L)-smooth relative to the entropy.
  const double step = 1.0 / (1.0 + f.q().cwiseAbs().maxCoeff());
  const Vector log_x = SafeLog(x);
  Vector y = x;
  double displacement = std::numeric_limits<double>::infinity();
  int it = 0;
  for (; it < max_iter; ++it) {
    const Vector logits =
        (1.0 - step) * SafeLog(y) + step * log_x - step * f.Gradient(y);
    Vector next = SoftmaxFromLogits(logits);
    displacement = (next - y).lpNorm<1>();
    y = std::move(next);
    if (displacement <= tol) break;
  }
  if (displacement > tol) {
    std::ostringstream os;
    os << "entropy prox: no convergence after " << max_iter
       << " iterations (displacement " << displacement << ")";
    throw ProxNonconvergence(os.str(), displacement);
  }
  out.point = std::move(y);
  out.witness_subgradient = f.Gradient(out.point);
  out.residual = EntropyResidual(x, out.witness_subgradient, out.point);
  out.iterations = it + 1;
  return out;
}

Vector MirrorStep(const MirrorMap& map, const Vector& x, const Vector& g,
                  double eta) {
  if (!(eta > 0.0)) throw Error(ErrorCode::kInvalidArgument, "eta must be > 0");
  RequireDimension(x, map.dimension(), "mirror step point");
  RequireDimension(g, map.dimension(), "mirror step gradient");
  RequireFinite(g, "mirror step gradient");
  if (map.kind() == MirrorKind::kSquaredEuclidean) {
    return map.domain().Project(x - eta * g);
  }
  RequirePositive(x, "mirror step point");
  return SoftmaxFromLogits(SafeLog(x) - eta * g);
}

}  // namespace proxregret
