#ifndef PROXREGRET_REGRET_H_
#define PROXREGRET_REGRET_H_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "proxregret/bregman.h"
#include "proxregret/comparators.h"
#include "proxregret/families.h"
#include "proxregret/trace.h"

namespace proxregret {

// Linearized proximal regret of one comparator over a trace, plus the
// trace-observed constants the bounds consume. The prox trajectory is kept
// so bound calculators never re-solve prox problems.
struct RegretReport {
  std::string comparator_id;
  double regret = 0.0;        // sum_t <g^t, x^t - p^t>
  std::vector<Vector> prox_path;  // p^1..p^T
  std::vector<double> f_values;   // f(p^t)
  double observed_d = 0.0;    // max_t ||x^t - p^t||
  double observed_bf = 0.0;   // max_t f(p^t) - min_t f(p^t)
  double bf_endpoints = 0.0;  // f(p^1) - f(p^T)
  // sum_{t<T} ||p^t - p^{t+1}||^2 in `path_norm`.
  double path_length = 0.0;
  NormKind path_norm = NormKind::kEuclidean;
  double rho = 0.0;
  double alpha = 0.0;
  // Mirror-descent reports: max_t D(p^t | x^t), and D(p^1 | x^1).
  std::optional<double> bregman_d;
  std::optional<double> bregman_d_first;
};

RegretReport ProximalRegret(const Trace& trace, const Comparator& f);

// Same accounting with p^t the Bregman prox under `map`.
RegretReport BregmanProximalRegret(const Trace& trace, const Comparator& f,
                                   const MirrorMap& map);

struct FamilyRegret {
  RegretReport best;
  std::vector<RegretReport> reports;
  // False when the family was sampled, i.e. `best` is a lower bound on the
  // sup over the underlying infinite family.
  bool exact = true;
};

// Max over the family. The unit linear family on whole-space is resolved with
// its exact maximizer v = gbar / ||gbar||.
FamilyRegret EvaluateFamily(const Trace& trace, const ComparatorFamily& family);

// max over members x of sum_t <g^t, x^t - x>. Exact for box, ball and
// simplex. Whole-space needs `radius`, in which case the comparator ranges
// over the ball B(0, radius).
double ExternalRegret(const Trace& trace,
                      std::optional<double> radius = std::nullopt);

// || (1/T) sum_t g^t ||.
double GradientEquilibriumNorm(const Trace& trace);

// sum_t <g^t, x^t - (A x^t + b)>. A must be symmetric and x -> Ax + b must
// keep every trace point feasible.
double SymmetricLinearSwapRegret(const Trace& trace, const Matrix& a,
                                 const Vector& b);

// P^T = sum_t ||g^t - g^{t-1}||^2 with g^0 = 0.
double GradientVariation(const Trace& trace);
// The individual terms ||g^t - g^{t-1}||^2, t = 1..T.
std::vector<double> GradientVariationTerms(const Trace& trace);

// sum_t l^t(x^t) - l^t(p^t) for explicit losses; `loss(t, x)` evaluates l^t.
double TrueLossRegret(const Trace& trace, const RegretReport& report,
                      const std::function<double(int, const Vector&)>& loss);

// max_t ||g^t|| in the given norm.
double MaxGradientNorm(const Trace& trace, NormKind norm = NormKind::kEuclidean);

}  // namespace proxregret

#endif  // PROXREGRET_REGRET_H_
