#include "proxregret/bounds.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "proxregret/error.h"

namespace proxregret {
namespace {

void RequireMatchingPath(const Trace& trace, const RegretReport& report) {
  if (trace.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "bound of an empty trace");
  }
  if (report.prox_path.size() != trace.rounds.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "missing prox path: report does not cover the trace");
  }
}

void RequireHorizon(int horizon) {
  if (horizon < 1) throw Error(ErrorCode::kInvalidArgument, "T must be >= 1");
}

}  // namespace

double GdFullBound(const Trace& trace, const RegretReport& report) {
  RequireMatchingPath(trace, report);
  const int T = trace.length();
  const double d = report.observed_d;
  double bound = (d * d + 2.0 * report.observed_bf) / (2.0 * trace.rounds.back().eta);
  for (const Round& r : trace.rounds) bound += 0.5 * r.eta * r.g.squaredNorm();
  for (int t = 0; t + 1 < T; ++t) {
    const double step = (report.prox_path[t] - report.prox_path[t + 1]).squaredNorm();
    bound -= (1.0 - report.rho) / (2.0 * trace.rounds[t].eta) * step;
  }
  return bound;
}

double GdSimpleBound(double diameter, double bf, double g, int horizon) {
  RequireHorizon(horizon);
  return (diameter * diameter + bf + g * g) * std::sqrt(static_cast<double>(horizon));
}

double GdOptimizedBound(double diameter, double bf, double g, int horizon) {
  RequireHorizon(horizon);
  return g * std::sqrt(diameter * diameter + 2.0 * bf) *
         std::sqrt(static_cast<double>(horizon));
}

double SymmetricSwapBound(double norm_a, double radius, double norm_b, double g,
                          int horizon) {
  RequireHorizon(horizon);
  return 3.0 * (1.0 + norm_a) *
         (4.0 * radius * radius + radius * norm_b + g * g) *
         std::sqrt(static_cast<double>(horizon));
}

double OgAnchorDiameter(const Trace& trace, const RegretReport& report) {
  RequireMatchingPath(trace, report);
  if (!trace.initial_anchor) {
    throw Error(ErrorCode::kNotOgTrace, "trace has no initial anchor w^0");
  }
  double d = (*trace.initial_anchor - report.prox_path[0]).norm();
  for (int t = 1; t < trace.length(); ++t) {
    const auto& w = trace.rounds[t - 1].anchor;
    if (!w) throw Error(ErrorCode::kNotOgTrace, "round without anchor w^t");
    d = std::max(d, (*w - report.prox_path[t]).norm());
  }
  return d;
}

double OgAdversarialBound(const Trace& trace, const RegretReport& report) {
  if (trace.learner != LearnerKind::kOptimisticGradient) {
    throw Error(ErrorCode::kNotOgTrace, "trace was not produced by OG");
  }
  if (report.rho > 0.0) {
    throw Error(ErrorCode::kInvalidArgument,
                "the OG bound covers convex comparators only (rho = 0)");
  }
  const double d = OgAnchorDiameter(trace, report);
  double bound = (d * d + 2.0 * report.observed_bf) / (2.0 * trace.rounds.back().eta);
  Vector previous = Vector::Zero(trace.dimension());
  for (const Round& r : trace.rounds) {
    if (!r.anchor) throw Error(ErrorCode::kNotOgTrace, "round without anchor");
    bound += r.eta * (r.g - previous).squaredNorm();
    bound -= (r.x - *r.anchor).squaredNorm() / (2.0 * r.eta);
    previous = r.g;
  }
  return bound;
}

double OgGameBound(double diameter, double b, double g, double l, int players,
                   int horizon, double eta) {
  RequireHorizon(horizon);
  if (!(eta > 0.0)) throw Error(ErrorCode::kInvalidArgument, "eta must be > 0");
  return (diameter * diameter + 2.0 * b) / eta + 2.0 * eta * g * g +
         3.0 * players * l * l * g * g * eta * eta * eta * horizon;
}

double OgGameBoundTuned(double diameter, double b, double g, double l,
                        int players, int horizon) {
  RequireHorizon(horizon);
  return (diameter * diameter + 2.0 * b + 4.0 * players * l * l * g * g) *
         std::pow(static_cast<double>(horizon), 0.25);
}

double OgVariationCap(double g, double l, int players, double eta) {
  return 3.0 * players * l * l * eta * eta * g * g;
}

double SocialStepLimit(double alpha, int players, double l) {
  if (!(alpha > 0.0) || players < 1 || !(l > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "social step limit needs alpha > 0, n >= 1, L > 0");
  }
  return std::sqrt(std::min(alpha, 1.0) / (8.0 * players * l * l));
}

double SocialBound(std::span<const double> diameters,
                   std::span<const double> bfs, double g, double l,
                   double alpha, double eta) {
  if (diameters.size() != bfs.size() || diameters.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "need one (D_i, B_i) pair per player");
  }
  const int n = static_cast<int>(diameters.size());
  const double limit = SocialStepLimit(alpha, n, l);
  if (!(eta > 0.0) || eta > limit * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "eta = " << eta << " exceeds sqrt(min(alpha,1)/(8 n L^2)) = " << limit;
    throw Error(ErrorCode::kStepSizeViolation, os.str());
  }
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += diameters[i] + bfs[i];
  return sum / (2.0 * eta) + n * eta * g * g;
}

double MdBound(const Trace& trace, const RegretReport& report) {
  RequireMatchingPath(trace, report);
  if (!report.bregman_d) {
    throw Error(ErrorCode::kInvalidArgument,
                "missing Bregman prox path: report is not a Bregman report");
  }
  const NormKind dual =
      trace.mirror ? trace.mirror->dual_norm() : NormKind::kEuclidean;
  double bound = (*report.bregman_d + report.observed_bf) / trace.rounds.back().eta;
  for (const Round& r : trace.rounds) {
    const double gn = Norm(r.g, dual);
    bound += 0.5 * r.eta * gn * gn;
  }
  bound -= 0.5 * (1.0 - report.rho) * report.path_length;
  return bound;
}

}  // namespace proxregret
