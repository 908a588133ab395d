#include "runner.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>

#include "json.hpp"

#include "proxregret/bounds.h"
#include "proxregret/comparators.h"
#include "proxregret/error.h"
#include "proxregret/families.h"
#include "proxregret/games.h"
#include "proxregret/learners.h"
#include "proxregret/regret.h"

namespace proxregret::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

std::string Num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string Num(const std::optional<double>& v) { return v ? Num(*v) : ""; }

std::string Joined(const Vector& v) {
  std::string out;
  for (int i = 0; i < v.size(); ++i) {
    if (i > 0) out += ';';
    out += Num(v[i]);
  }
  return out;
}

Json JsonNumber(std::optional<double> v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

void WriteTrace(const Trace& trace, const fs::path& path) {
  std::ofstream out(path);
  out << "t,x,g,eta\n";
  for (const Round& r : trace.rounds) {
    out << r.t << ',' << Joined(r.x) << ',' << Joined(r.g) << ',' << Num(r.eta) << '\n';
  }
}

struct Row {
  std::string comparator_id;
  double regret = 0.0;
  double d_obs = 0.0;
  double bf_obs = 0.0;
  std::optional<double> bound;
};

void WriteReport(const std::vector<Row>& rows, const fs::path& path) {
  std::ofstream out(path);
  out << "comparator_id,regret,D_obs,Bf_obs,bound,slack\n";
  for (const Row& r : rows) {
    out << r.comparator_id << ',' << Num(r.regret) << ',' << Num(r.d_obs) << ','
        << Num(r.bf_obs) << ',' << Num(r.bound) << ','
        << (r.bound ? Num(*r.bound - r.regret) : "") << '\n';
  }
}

bool UsesEntropy(const Trace& trace) {
  return trace.learner == LearnerKind::kMirrorDescent && trace.mirror &&
         trace.mirror->kind() == MirrorKind::kNegativeEntropy;
}

// Regret reports of one trace against a family. Mirror descent under the
// entropy map is measured with the Bregman prox; every other learner with
// the Euclidean prox.
std::vector<RegretReport> Reports(const Trace& trace, const ComparatorFamily& family) {
  if (!UsesEntropy(trace)) return EvaluateFamily(trace, family).reports;
  if (family.unit_linear()) {
    throw Error(ErrorCode::kUnsupported, "the unit linear family needs an unconstrained set");
  }
  std::vector<RegretReport> out;
  for (const Comparator& f : family.members()) {
    out.push_back(BregmanProximalRegret(trace, f, *trace.mirror));
  }
  return out;
}

// The a posteriori bound that matches the learner, when one applies.
std::optional<double> TraceBound(const Trace& trace, const RegretReport& report) {
  switch (trace.learner) {
    case LearnerKind::kGradientDescent:
      return GdFullBound(trace, report);
    case LearnerKind::kOptimisticGradient:
      if (report.rho > 0.0) return std::nullopt;
      return OgAdversarialBound(trace, report);
    case LearnerKind::kMirrorDescent:
      if (UsesEntropy(trace)) return MdBound(trace, report);
      return GdFullBound(trace, report);
  }
  return std::nullopt;
}

Row MakeRow(const RegretReport& report, std::optional<double> bound, const std::string& prefix) {
  Row row;
  row.comparator_id = prefix + report.comparator_id;
  row.regret = report.regret;
  row.d_obs = report.bregman_d ? *report.bregman_d : report.observed_d;
  row.bf_obs = report.observed_bf;
  row.bound = bound;
  return row;
}

std::string LearnerName(const LearnerSpec& spec) {
  std::string name = LearnerKindName(spec.kind);
  if (spec.kind == LearnerKind::kMirrorDescent) {
    name += std::string("/") + MirrorKindName(spec.mirror);
  }
  return name;
}

// Fields shared by every mode, with the regret block filled from `rows`.
Json SummaryShell(const ExperimentConfig& config) {
  Json j;
  j["name"] = config.name;
  j["mode"] = ModeName(config.mode);
  j["seed"] = config.seed;
  j["T"] = config.mode == Mode::kFuzz ? Json(nullptr) : Json(config.rounds);
  for (const char* key :
       {"learner", "set", "comparators", "max_regret", "max_regret_comparator", "bound_at_max",
        "min_slack", "bounds_hold", "external_regret", "gradient_equilibrium_norm",
        "gradient_variation", "pce_epsilon", "worst_player", "worst_comparator", "fuzz_suite",
        "fuzz_samples", "fuzz_worst", "fuzz_threshold"}) {
    j[key] = nullptr;
  }
  return j;
}

int FillRegretBlock(Json& j, const std::vector<Row>& rows) {
  j["comparators"] = rows.size();
  if (rows.empty()) return 0;
  const Row* best = &rows.front();
  std::optional<double> min_slack;
  int violations = 0;
  for (const Row& r : rows) {
    if (r.regret > best->regret) best = &r;
    if (!r.bound) continue;
    const double slack = *r.bound - r.regret;
    if (!min_slack || slack < *min_slack) min_slack = slack;
    if (!(r.regret <= *r.bound + kBoundTolerance)) ++violations;
  }
  j["max_regret"] = JsonNumber(best->regret);
  j["max_regret_comparator"] = best->comparator_id;
  j["bound_at_max"] = JsonNumber(best->bound);
  j["min_slack"] = JsonNumber(min_slack);
  j["bounds_hold"] = violations == 0;
  return violations;
}

std::string Headline(const Json& j, int violations) {
  std::ostringstream os;
  os << j["name"].get<std::string>() << " [" << j["mode"].get<std::string>() << "]";
  if (!j["max_regret"].is_null()) {
    os << " max_regret=" << Num(j["max_regret"].get<double>()) << " ("
       << j["max_regret_comparator"].get<std::string>() << ")";
  }
  if (!j["pce_epsilon"].is_null()) os << " pce_epsilon=" << Num(j["pce_epsilon"].get<double>());
  if (!j["fuzz_worst"].is_null()) os << " fuzz_worst=" << Num(j["fuzz_worst"].get<double>());
  os << (violations == 0 ? " ok" : " VIOLATIONS=" + std::to_string(violations));
  return os.str();
}

void WriteJson(const Json& j, const fs::path& path) {
  std::ofstream out(path);
  out << j.dump(2) << '\n';
}

ExperimentResult RunAdversarial(const ExperimentConfig& config, const fs::path& dir) {
  std::mt19937_64 rng(config.seed);
  const ConvexSet& set = *config.set;
  auto learner = MakeLearner(config.learner, set, rng);
  const LossOracle oracle = MakeAdversary(config.adversary, set.dimension(), config.seed);
  const Trace trace = Run(*learner, oracle, config.rounds);
  const ComparatorFamily family = ResolveFamily(config.comparators, set, rng);

  std::vector<Row> rows;
  for (const RegretReport& r : Reports(trace, family)) {
    rows.push_back(MakeRow(r, TraceBound(trace, r), ""));
  }
  WriteTrace(trace, dir / "trace.csv");
  WriteReport(rows, dir / "report.csv");

  Json j = SummaryShell(config);
  j["learner"] = LearnerName(config.learner);
  j["set"] = set.Describe();
  const int violations = FillRegretBlock(j, rows);
  if (set.bounded() || config.comparator_radius) {
    j["external_regret"] = JsonNumber(ExternalRegret(trace, config.comparator_radius));
  }
  j["gradient_equilibrium_norm"] = JsonNumber(GradientEquilibriumNorm(trace));
  j["gradient_variation"] = JsonNumber(GradientVariation(trace));
  WriteJson(j, dir / "summary.json");
  return {config.name, Headline(j, violations), violations};
}

// The common constant step when every player runs OG with the same one.
std::optional<double> SharedOgStep(const std::vector<LearnerSpec>& players) {
  std::optional<double> eta;
  for (const LearnerSpec& p : players) {
    if (p.kind != LearnerKind::kOptimisticGradient || !p.schedule.is_constant()) {
      return std::nullopt;
    }
    const double e = p.schedule(1);
    if (eta && *eta != e) return std::nullopt;
    eta = e;
  }
  return eta;
}

ExperimentResult RunSelfPlay(const ExperimentConfig& config, const fs::path& dir) {
  const SmoothConvexGame& game = *config.game;
  const int n = game.num_players();
  const PlayRecord record = SelfPlay(game, config.players, config.rounds, config.seed);

  std::mt19937_64 rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<ComparatorFamily> families;
  for (int i = 0; i < n; ++i) {
    families.push_back(ResolveFamily(config.comparators, game.set(i), rng));
  }
  const std::optional<double> eta = SharedOgStep(config.players);

  std::vector<Row> rows;
  std::optional<double> external, ge_norm, variation;
  std::vector<std::string> learners, sets;
  for (int i = 0; i < n; ++i) {
    const Trace& trace = record.traces[i];
    const std::string prefix = "p" + std::to_string(i) + ":";
    for (const RegretReport& r : Reports(trace, families[i])) {
      std::optional<double> bound;
      if (eta && r.rho == 0.0) {
        bound = OgGameBound(game.set(i).Diameter(), r.observed_bf, game.lipschitz(),
                            game.smoothness(), n, config.rounds, *eta);
      } else {
        bound = TraceBound(trace, r);
      }
      rows.push_back(MakeRow(r, bound, prefix));
    }
    WriteTrace(trace, dir / ("trace_p" + std::to_string(i) + ".csv"));
    external = std::max(external.value_or(-std::numeric_limits<double>::infinity()),
                        ExternalRegret(trace));
    ge_norm = std::max(ge_norm.value_or(0.0), GradientEquilibriumNorm(trace));
    variation = std::max(variation.value_or(0.0), GradientVariation(trace));
    learners.push_back(LearnerName(config.players[i]));
    sets.push_back(game.set(i).Describe());
  }
  WriteReport(rows, dir / "report.csv");

  const PceGap gap = ComputePceGap(record, families);
  Json j = SummaryShell(config);
  j["learner"] = learners;
  j["set"] = sets;
  const int violations = FillRegretBlock(j, rows);
  j["external_regret"] = JsonNumber(external);
  j["gradient_equilibrium_norm"] = JsonNumber(ge_norm);
  j["gradient_variation"] = JsonNumber(variation);
  j["pce_epsilon"] = JsonNumber(gap.epsilon);
  j["worst_player"] = gap.worst_player;
  j["worst_comparator"] = gap.worst_comparator;
  WriteJson(j, dir / "summary.json");
  return {config.name, Headline(j, violations), violations};
}

ConvexSet FuzzSet(SetKind kind, int d) {
  switch (kind) {
    case SetKind::kBox: return ConvexSet::Box(d, -1.0, 1.0);
    case SetKind::kBall: return ConvexSet::Ball(Vector::Zero(d), 1.0);
    default: return ConvexSet::Simplex(d);
  }
}

// Quadratic with eigenvalues in [-rho, 1], the bottom one pinned at -rho.
Comparator FuzzQuadratic(int d, double rho_max, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal;
  const double rho = rho_max * unit(rng);
  Vector eig(d), c(d);
  for (int i = 0; i < d; ++i) {
    eig[i] = -rho + (1.0 + rho) * unit(rng);
    c[i] = normal(rng);
  }
  eig[0] = -rho;
  return Comparator::Quadratic(RandomSymmetricWithSpectrum(eig, rng), c, rho);
}

// Cycles through the comparator kinds the prox solver handles.
Comparator FuzzComparator(int k, const ConvexSet& set, double rho_max, std::mt19937_64& rng) {
  const int d = set.dimension();
  switch (k % 4) {
    case 0: return FuzzQuadratic(d, rho_max, rng);
    case 1: return RandomUnitLinear(d, 1, rng).front();
    case 2: return RandomIndicatorPoints(set, 1, rng).front();
    default:
      if (set.kind() == SetKind::kSimplex) return FuzzQuadratic(d, rho_max, rng);
      return RandomIndicatorSubsets(set, 1, rng).front();
  }
}

Vector FuzzPoint(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Vector x(d);
  for (int i = 0; i < d; ++i) x[i] = 2.0 * normal(rng);
  return x;
}

ExperimentResult RunFuzz(const ExperimentConfig& config, const fs::path& dir) {
  const FuzzConfig& fuzz = config.fuzz;
  std::mt19937_64 rng(config.seed);
  std::uniform_int_distribution<int> dim(1, fuzz.max_dimension);
  const bool lower_is_worse = fuzz.suite == "key-inequality";
  const double threshold = lower_is_worse ? -1e-8 : 1e-7;

  struct PerSet {
    int samples = 0;
    int failures = 0;
    double worst = 0.0;
  };
  std::vector<PerSet> per_set(fuzz.sets.size());
  for (PerSet& p : per_set) {
    p.worst = lower_is_worse ? std::numeric_limits<double>::infinity() : 0.0;
  }
  for (int k = 0; k < fuzz.samples; ++k) {
    const std::size_t which = static_cast<std::size_t>(k) % fuzz.sets.size();
    const ConvexSet set = FuzzSet(fuzz.sets[which], dim(rng));
    double value = 0.0;
    if (fuzz.suite == "key-inequality") {
      const Comparator f = FuzzComparator(k / static_cast<int>(fuzz.sets.size()), set,
                                          fuzz.rho_max, rng);
      const Vector x = FuzzPoint(set.dimension(), rng);
      Vector p = set.Sample(rng);
      if (f.kind() == ComparatorKind::kIndicatorPoint) p = f.point();
      if (f.kind() == ComparatorKind::kIndicatorSet) p = f.subset().Sample(rng);
      value = KeyInequalityGap(f, set, x, p);
    } else if (fuzz.suite == "prox-optimality") {
      const Comparator f = FuzzComparator(k / static_cast<int>(fuzz.sets.size()), set,
                                          fuzz.rho_max, rng);
      const Vector x = FuzzPoint(set.dimension(), rng);
      value = std::max(0.0, CheckProxOptimality(f, set, x, Prox(f, set, x).point));
    } else {
      const AffineMap endo = RandomSymmetricEndomorphism(set, rng);
      const AffineMap map =
          InterpolateEndomorphism(endo.a, endo.b, InterpolationWeight(endo.a));
      const Comparator f = AffineToComparator(map.a, map.b);
      const Vector x = set.Sample(rng);
      value = (Prox(f, set, x).point - map.Apply(x)).norm();
    }
    PerSet& p = per_set[which];
    ++p.samples;
    const bool bad = lower_is_worse ? !(value >= threshold) : !(value <= threshold);
    if (bad) ++p.failures;
    p.worst = lower_is_worse ? std::min(p.worst, value) : std::max(p.worst, value);
  }

  std::ofstream report(dir / "report.csv");
  report << "set,samples,failures,worst\n";
  int violations = 0;
  std::optional<double> worst;
  for (std::size_t i = 0; i < per_set.size(); ++i) {
    const PerSet& p = per_set[i];
    report << SetKindName(fuzz.sets[i]) << ',' << p.samples << ',' << p.failures << ','
           << (p.samples > 0 ? Num(p.worst) : "") << '\n';
    violations += p.failures;
    if (p.samples == 0) continue;
    if (!worst) {
      worst = p.worst;
    } else {
      worst = lower_is_worse ? std::min(*worst, p.worst) : std::max(*worst, p.worst);
    }
  }

  Json j = SummaryShell(config);
  std::vector<std::string> sets;
  for (SetKind kind : fuzz.sets) sets.push_back(SetKindName(kind));
  j["set"] = sets;
  j["bounds_hold"] = violations == 0;
  j["fuzz_suite"] = fuzz.suite;
  j["fuzz_samples"] = fuzz.samples;
  j["fuzz_worst"] = JsonNumber(worst);
  j["fuzz_threshold"] = threshold;
  WriteJson(j, dir / "summary.json");
  return {config.name, Headline(j, violations), violations};
}

}  // namespace

ExperimentResult RunExperiment(const ExperimentConfig& config, const std::string& out_dir) {
  const fs::path dir = fs::path(out_dir) / config.name;
  fs::create_directories(dir);
  switch (config.mode) {
    case Mode::kAdversarial: return RunAdversarial(config, dir);
    case Mode::kSelfPlay: return RunSelfPlay(config, dir);
    case Mode::kFuzz: return RunFuzz(config, dir);
  }
  return {};
}

}  // namespace proxregret::cli
