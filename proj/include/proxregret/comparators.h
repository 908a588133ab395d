#ifndef PROXREGRET_COMPARATORS_H_
#define PROXREGRET_COMPARATORS_H_

#include <memory>
#include <optional>
#include <string>

#include "proxregret/geometry.h"

namespace proxregret {

enum class ComparatorKind {
  kIndicatorPoint,
  kIndicatorSet,
  kLinear,
  kQuadratic,  // f(x) = 0.5 x'Qx + c'x
  kConstant,
};

const char* ComparatorKindName(ComparatorKind kind);

// A rho-weakly convex comparator function (rho < 1). Immutable.
//
// Every kind carries the constants the regret bounds consume: the
// weak-convexity modulus rho, the strong-convexity modulus alpha and, for
// smooth kinds, the gradient Lipschitz constant.
class Comparator {
 public:
  static Comparator IndicatorPoint(Vector point);
  // Indicator of a convex subset S. The ambient feasible set is assumed to
  // contain S, so prox reduces to projection onto S.
  static Comparator IndicatorSet(ConvexSet subset);
  static Comparator Linear(Vector direction);
  // `rho` defaults to max(0, -lambda_min(Q)). A supplied rho must dominate
  // -lambda_min(Q) and be < 1.
  static Comparator Quadratic(Matrix q, Vector c,
                              std::optional<double> rho = std::nullopt);
  static Comparator Constant(int dimension, double value = 0.0);

  ComparatorKind kind() const { return kind_; }
  int dimension() const { return dimension_; }
  double rho() const { return rho_; }
  double strong_convexity() const { return alpha_; }
  // Lipschitz constant of the gradient (0 for linear/constant, ||Q||_2 for
  // quadratics); meaningless for indicators.
  double smoothness() const { return smoothness_; }
  bool is_indicator() const {
    return kind_ == ComparatorKind::kIndicatorPoint ||
           kind_ == ComparatorKind::kIndicatorSet;
  }
  bool is_smooth() const { return !is_indicator(); }

  const std::string& id() const { return id_; }
  Comparator WithId(std::string id) const;

  // +infinity exactly when x violates an indicator.
  double Evaluate(const Vector& x) const;
  // Gradient of a smooth kind; kUnsupported for indicators.
  Vector Gradient(const Vector& x) const;

  const Vector& point() const { return point_; }       // indicator-point
  const Vector& direction() const { return vec_; }     // linear
  const Matrix& q() const { return q_; }                // quadratic
  const Vector& c() const { return vec_; }              // quadratic
  const ConvexSet& subset() const { return *subset_; }  // indicator-set

 private:
  Comparator(ComparatorKind kind, int dimension);

  ComparatorKind kind_;
  int dimension_;
  double rho_ = 0.0;
  double alpha_ = 0.0;
  double smoothness_ = 0.0;
  double constant_ = 0.0;
  Vector point_;
  Vector vec_;
  Matrix q_;
  std::shared_ptr<const ConvexSet> subset_;
  std::string id_;
};

struct ProxResult {
  Vector point;                // p = prox_f(x)
  Vector witness_subgradient;  // v in the subdifferential of f at p
  double residual = 0.0;       // first-order optimality violation at p
  int iterations = 0;          // 0 for closed forms
};

inline constexpr double kProxTolerance = 1e-10;
inline constexpr int kProxMaxIterations = 100000;

// argmin over `set` of f(y) + 0.5 ||y - x||^2. Closed forms are used for
// indicators, linear, constant and unconstrained quadratics; everything else
// goes through ProxIterative.
ProxResult Prox(const Comparator& f, const ConvexSet& set, const Vector& x);

// Projected gradient on the (1 - rho)-strongly convex prox subproblem with
// step 1 / (1 + L_f). Stops once the fixed-point displacement is <= tol.
ProxResult ProxIterative(const Comparator& f, const ConvexSet& set,
                         const Vector& x, double tol = kProxTolerance,
                         int max_iter = kProxMaxIterations);

// Sup over members x' of <x - v - p, x' - p>, with v the analytic witness
// subgradient at p. The sup is exact (support function) for box, ball and
// simplex; for whole-space it is max_i |(x - v - p)_i| over the unit probes
// p +- e_i. Returns +infinity when f(p) is infinite.
double CheckProxOptimality(const Comparator& f, const ConvexSet& set,
                           const Vector& x, const Vector& p);

// [2f(p) - 2f(p_x) - (1 - rho)||p - p_x||^2] - [||x - p_x||^2 - ||x - p||^2]
// with p_x = prox_f(x). Non-negative for every rho-weakly convex f.
double KeyInequalityGap(const Comparator& f, const ConvexSet& set,
                        const Vector& x, const Vector& p);

// Quadratic comparator whose prox is x -> Ax + b wherever Ax + b is
// feasible. A must be symmetric positive definite with either
// lambda_max(A) <= 1 (convex case, rho = 0) or lambda_min(A) > 1/2 (smooth
// case, rho = ||A^-1 - I||_2).
Comparator AffineToComparator(const Matrix& a, const Vector& b);

struct AffineMap {
  Matrix a;
  Vector b;
  Vector Apply(const Vector& x) const { return a * x + b; }
};

// (1 - alpha) Id + alpha (x -> Ax + b).
AffineMap InterpolateEndomorphism(const Matrix& a, const Vector& b,
                                  double alpha);

// alpha = 1 / (3 (1 + ||A||_2)), the choice that makes the interpolated map
// prox-representable.
double InterpolationWeight(const Matrix& a);

// Upper bound 3 D^2 + D ||b|| on the comparator value spread B_f of the
// interpolated affine comparator over a set inside B(0, D).
double BfBoundAffine(const Vector& b, double radius);

double SpectralNorm(const Matrix& a);
bool IsSymmetric(const Matrix& a, double tol = 1e-12);

}  // namespace proxregret

#endif  // PROXREGRET_COMPARATORS_H_
