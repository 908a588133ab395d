#ifndef PROXREGRET_BREGMAN_H_
#define PROXREGRET_BREGMAN_H_

#include "proxregret/comparators.h"
#include "proxregret/geometry.h"

namespace proxregret {

enum class MirrorKind { kSquaredEuclidean, kNegativeEntropy };

const char* MirrorKindName(MirrorKind kind);

// Entropy iterates are floored here after renormalization.
inline constexpr double kEntropyFloor = 1e-300;

// A 1-strongly convex distance-generating function on a domain.
//   squared-euclidean: 0.5 ||x||^2 on any ConvexSet, strongly convex in l2.
//   negative-entropy:  sum x_i log x_i on the simplex, strongly convex in l1.
class MirrorMap {
 public:
  static MirrorMap SquaredEuclidean(ConvexSet domain);
  static MirrorMap NegativeEntropy(int dimension);

  MirrorKind kind() const { return kind_; }
  const ConvexSet& domain() const { return domain_; }
  int dimension() const { return domain_.dimension(); }
  // Norm the map is 1-strongly convex in, and its dual.
  NormKind primal_norm() const;
  NormKind dual_norm() const { return DualNorm(primal_norm()); }

  double Potential(const Vector& x) const;
  Vector PotentialGradient(const Vector& x) const;

 private:
  MirrorMap(MirrorKind kind, ConvexSet domain)
      : kind_(kind), domain_(std::move(domain)) {}

  MirrorKind kind_;
  ConvexSet domain_;
};

// D(x|y) = phi(x) - phi(y) - <grad phi(y), x - y>. For entropy this is the
// generalized KL divergence with 0 log 0 = 0; y must be strictly positive.
double BregmanDivergence(const MirrorMap& map, const Vector& x,
                         const Vector& y);

// argmin over the domain of f(y) + D(y|x).
//   squared-euclidean: delegates to Prox.
//   entropy: closed forms for constant, indicator-point and linear
//   (y_i proportional to x_i exp(-v_i)); smooth quadratics use an iterative
//   mirror-gradient solver with the ProxIterative tolerance contract.
// The residual is the sup over the domain of
// <grad phi(x) - v - grad phi(p), x' - p>.
ProxResult BregmanProx(const Comparator& f, const MirrorMap& map,
                       const Vector& x, double tol = kProxTolerance,
                       int max_iter = kProxMaxIterations);

// argmin over the domain of <eta g, y> + D(y|x).
Vector MirrorStep(const MirrorMap& map, const Vector& x, const Vector& g,
                  double eta);

}  // namespace proxregret

#endif  // PROXREGRET_BREGMAN_H_
