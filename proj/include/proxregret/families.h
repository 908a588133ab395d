#ifndef PROXREGRET_FAMILIES_H_
#define PROXREGRET_FAMILIES_H_

#include <random>
#include <vector>

#include "proxregret/comparators.h"
#include "proxregret/geometry.h"

namespace proxregret {

// A finite or finitely-sampled family of comparators. The unit linear family
// {f_v : ||v|| <= 1} on whole-space is kept symbolic: its sup is attained in
// closed form, so no sampling happens.
class ComparatorFamily {
 public:
  static ComparatorFamily Of(std::vector<Comparator> members);
  static ComparatorFamily UnitLinear(int dimension);

  bool unit_linear() const { return unit_linear_; }
  int dimension() const { return dimension_; }
  const std::vector<Comparator>& members() const { return members_; }
  bool empty() const { return !unit_linear_ && members_.empty(); }

  ComparatorFamily& Add(Comparator f);
  ComparatorFamily& Append(const std::vector<Comparator>& more);

 private:
  std::vector<Comparator> members_;
  bool unit_linear_ = false;
  int dimension_ = 0;
};

// Indicator of each extreme point (box or simplex); for balls, the 2d
// axis-extreme points of the ball.
std::vector<Comparator> IndicatorPointsAtExtremes(const ConvexSet& set);

// `count` indicator-point comparators at random members of `set`.
std::vector<Comparator> RandomIndicatorPoints(const ConvexSet& set, int count,
                                              std::mt19937_64& rng);

// Indicators of random sub-boxes (box sets) or sub-balls (ball sets).
// kUnsupported for simplices and whole-space.
std::vector<Comparator> RandomIndicatorSubsets(const ConvexSet& set, int count,
                                               std::mt19937_64& rng);

// Linear comparators with uniformly random unit-norm directions.
std::vector<Comparator> RandomUnitLinear(int dimension, int count,
                                         std::mt19937_64& rng);

// Convex quadratics with eigenvalues in [alpha, alpha + spread] and c drawn
// from a standard normal scaled by `c_scale`.
std::vector<Comparator> RandomStronglyConvexQuadratics(int dimension, int count,
                                                       double alpha,
                                                       double spread,
                                                       double c_scale,
                                                       std::mt19937_64& rng);

// Quadratics with eigenvalues in [-rho, 1]; rho drawn uniformly from
// [0, rho_max] per member.
std::vector<Comparator> RandomWeaklyConvexQuadratics(int dimension, int count,
                                                     double rho_max,
                                                     std::mt19937_64& rng);

// A random symmetric affine endomorphism of `set`:
//   simplex (untranslated): symmetric doubly-stochastic A, b = 0;
//   ball centered at 0:     symmetric A with ||A||_2 <= 1, b = 0;
//   box symmetric about 0:  symmetric A with max row l1-norm <= 1, b = 0.
// kUnsupported otherwise.
AffineMap RandomSymmetricEndomorphism(const ConvexSet& set,
                                      std::mt19937_64& rng);

// Prox-representable comparators derived from random symmetric affine
// endomorphisms via the alpha = 1 / (3 (1 + ||A||_2)) interpolation.
std::vector<Comparator> RandomAffineComparators(const ConvexSet& set, int count,
                                                std::mt19937_64& rng);

// Random symmetric matrix with the given eigenvalues.
Matrix RandomSymmetricWithSpectrum(const Vector& eigenvalues,
                                   std::mt19937_64& rng);

}  // namespace proxregret

#endif  // PROXREGRET_FAMILIES_H_
