#include "proxregret/regret.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "proxregret/error.h"

namespace proxregret {
namespace {

// Fills every field derivable from (x^t, g^t, p^t, f(p^t)).
void Summarize(const Trace& trace, RegretReport& report) {
  const int T = trace.length();
  report.regret = 0.0;
  report.observed_d = 0.0;
  report.path_length = 0.0;
  double f_max = -std::numeric_limits<double>::infinity();
  double f_min = std::numeric_limits<double>::infinity();
  for (int t = 0; t < T; ++t) {
    const Round& r = trace.rounds[t];
    const Vector& p = report.prox_path[t];
    report.regret += r.g.dot(r.x - p);
    report.observed_d = std::max(report.observed_d, (r.x - p).norm());
    f_max = std::max(f_max, report.f_values[t]);
    f_min = std::min(f_min, report.f_values[t]);
    if (t + 1 < T) {
      const double step = Norm(p - report.prox_path[t + 1], report.path_norm);
      report.path_length += step * step;
    }
  }
  if (T > 0) {
    report.observed_bf = f_max - f_min;
    report.bf_endpoints = report.f_values.front() - report.f_values.back();
  }
}

void RequireNonEmpty(const Trace& trace, const char* what) {
  if (trace.empty()) {
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + ": empty trace");
  }
}

}  // namespace

RegretReport ProximalRegret(const Trace& trace, const Comparator& f) {
  if (f.dimension() != trace.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "comparator and trace dimensions differ");
  }
  RegretReport report;
  report.comparator_id = f.id();
  report.rho = f.rho();
  report.alpha = f.strong_convexity();
  report.prox_path.reserve(trace.length());
  report.f_values.reserve(trace.length());
  for (const Round& r : trace.rounds) {
    Vector p = Prox(f, trace.set, r.x).point;
    report.f_values.push_back(f.Evaluate(p));
    report.prox_path.push_back(std::move(p));
  }
  Summarize(trace, report);
  return report;
}

RegretReport BregmanProximalRegret(const Trace& trace, const Comparator& f,
                                   const MirrorMap& map) {
  if (f.dimension() != trace.dimension() ||
      map.dimension() != trace.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "comparator, mirror map and trace dimensions differ");
  }
  RegretReport report;
  report.comparator_id = f.id();
  report.rho = f.rho();
  report.alpha = f.strong_convexity();
  report.path_norm = map.primal_norm();
  report.bregman_d = 0.0;
  for (const Round& r : trace.rounds) {
    Vector p = BregmanProx(f, map, r.x).point;
    const double div = BregmanDivergence(map, p, r.x);
    if (!report.bregman_d_first) report.bregman_d_first = div;
    report.bregman_d = std::max(*report.bregman_d, div);
    report.f_values.push_back(f.Evaluate(p));
    report.prox_path.push_back(std::move(p));
  }
  Summarize(trace, report);
  return report;
}

FamilyRegret EvaluateFamily(const Trace& trace, const ComparatorFamily& family) {
  if (family.empty()) throw Error(ErrorCode::kEmptyFamily, "no comparators");
  FamilyRegret out;
  if (family.unit_linear()) {
    if (trace.set.kind() != SetKind::kWholeSpace) {
      throw Error(ErrorCode::kUnsupported,
                  "the exact unit linear family needs an unconstrained trace; "
                  "sample it with RandomUnitLinear instead");
    }
    const Vector sum = trace.GradientSum();
    Vector v = Vector::Zero(trace.dimension());
    if (sum.norm() > 0.0) {
      v = sum / sum.norm();
    } else {
      v[0] = 1.0;
    }
    out.reports.push_back(
        ProximalRegret(trace, Comparator::Linear(v).WithId("unit-linear*")));
  }
  for (const Comparator& f : family.members()) {
    if (trace.mirror && trace.mirror->kind() != MirrorKind::kSquaredEuclidean) {
      out.reports.push_back(BregmanProximalRegret(trace, f, *trace.mirror));
    } else {
      out.reports.push_back(ProximalRegret(trace, f));
    }
  }
  const auto best = std::max_element(
      out.reports.begin(), out.reports.end(),
      [](const RegretReport& a, const RegretReport& b) {
        return a.regret < b.regret;
      });
  out.best = *best;
  return out;
}

double ExternalRegret(const Trace& trace, std::optional<double> radius) {
  const Vector sum = trace.GradientSum();
  double played = 0.0;
  for (const Round& r : trace.rounds) played += r.g.dot(r.x);
  if (trace.set.kind() == SetKind::kWholeSpace) {
    if (!radius) {
      if (sum.isZero(0.0)) return played;
      throw Error(ErrorCode::kUnbounded,
                  "external regret on whole-space needs a comparator radius");
    }
    return played + *radius * sum.norm();
  }
  const Vector best = trace.set.ArgminLinear(sum);
  return played - sum.dot(best);
}

double GradientEquilibriumNorm(const Trace& trace) {
  RequireNonEmpty(trace, "gradient equilibrium");
  return trace.GradientSum().norm() / trace.length();
}

double SymmetricLinearSwapRegret(const Trace& trace, const Matrix& a,
                                 const Vector& b) {
  const int d = trace.dimension();
  if (a.rows() != d || a.cols() != d || b.size() != d) {
    throw Error(ErrorCode::kDimensionMismatch, "affine map dimensions");
  }
  if (!IsSymmetric(a, 1e-10)) {
    throw Error(ErrorCode::kInvalidArgument, "A must be symmetric");
  }
  double sum = 0.0;
  for (const Round& r : trace.rounds) {
    const Vector image = a * r.x + b;
    if (!trace.set.Contains(image)) {
      std::ostringstream os;
      os << "round " << r.t << ": image of x^t leaves " << trace.set.Describe();
      throw Error(ErrorCode::kNotEndomorphism, os.str());
    }
    sum += r.g.dot(r.x - image);
  }
  return sum;
}

std::vector<double> GradientVariationTerms(const Trace& trace) {
  std::vector<double> terms;
  terms.reserve(trace.length());
  Vector previous = Vector::Zero(trace.dimension());
  for (const Round& r : trace.rounds) {
    terms.push_back((r.g - previous).squaredNorm());
    previous = r.g;
  }
  return terms;
}

double GradientVariation(const Trace& trace) {
  double total = 0.0;
  for (double term : GradientVariationTerms(trace)) total += term;
  return total;
}

double TrueLossRegret(const Trace& trace, const RegretReport& report,
                      const std::function<double(int, const Vector&)>& loss) {
  if (report.prox_path.size() != trace.rounds.size()) {
    throw Error(ErrorCode::kInvalidArgument, "report does not match trace");
  }
  double total = 0.0;
  for (size_t i = 0; i < trace.rounds.size(); ++i) {
    const Round& r = trace.rounds[i];
    total += loss(r.t, r.x) - loss(r.t, report.prox_path[i]);
  }
  return total;
}

double MaxGradientNorm(const Trace& trace, NormKind norm) {
  double best = 0.0;
  for (const Round& r : trace.rounds) best = std::max(best, Norm(r.g, norm));
  return best;
}

}  // namespace proxregret
