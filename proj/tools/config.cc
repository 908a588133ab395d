#include "config.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "proxregret/error.h"

namespace proxregret::cli {
namespace {

namespace fs = std::filesystem;

// Wraps a YAML node with the file it came from, so every accessor can
// report a line-anchored error.
class Node {
 public:
  Node(YAML::Node node, std::string file) : node_(std::move(node)), file_(std::move(file)) {}

  Location where() const {
    const YAML::Mark mark = node_.Mark();
    return {file_, mark.line >= 0 ? mark.line + 1 : 0};
  }
  [[noreturn]] void Fail(const std::string& message) const {
    throw ConfigError(where(), message);
  }

  bool IsMap() const { return node_.IsMap(); }
  bool IsSequence() const { return node_.IsSequence(); }
  bool IsScalar() const { return node_.IsScalar(); }
  std::size_t size() const { return node_.size(); }

  bool Has(const std::string& key) const { return node_.IsMap() && node_[key]; }

  Node Get(const std::string& key) const {
    if (!node_.IsMap()) Fail("expected a table");
    const YAML::Node child = node_[key];
    if (!child) Fail("missing key '" + key + "'");
    return Node(child, file_);
  }
  Node At(std::size_t i) const { return Node(node_[i], file_); }

  // Rejects keys outside `allowed`.
  void RequireKeys(std::initializer_list<const char*> allowed) const {
    if (!node_.IsMap()) Fail("expected a table");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& kv : node_) {
      const std::string key = kv.first.as<std::string>();
      if (!ok.count(key)) Node(kv.first, file_).Fail("unknown key '" + key + "'");
    }
  }

  std::string String() const {
    if (!node_.IsScalar()) Fail("expected a string");
    return node_.as<std::string>();
  }
  double Double() const {
    if (!node_.IsScalar()) Fail("expected a number");
    double value = 0.0;
    if (!YAML::convert<double>::decode(node_, value) || !std::isfinite(value)) {
      Fail("expected a finite number, got '" + node_.Scalar() + "'");
    }
    return value;
  }
  long long Integer() const {
    if (!node_.IsScalar()) Fail("expected an integer");
    long long value = 0;
    if (!YAML::convert<long long>::decode(node_, value)) {
      Fail("expected an integer, got '" + node_.Scalar() + "'");
    }
    return value;
  }
  bool Bool() const {
    bool value = false;
    if (!node_.IsScalar() || !YAML::convert<bool>::decode(node_, value)) {
      Fail("expected true or false");
    }
    return value;
  }
  Vector Vec() const {
    if (!node_.IsSequence() || node_.size() == 0) Fail("expected a non-empty list of numbers");
    Vector v(static_cast<int>(node_.size()));
    for (std::size_t i = 0; i < node_.size(); ++i) v[i] = At(i).Double();
    return v;
  }
  Matrix Mat() const {
    if (!node_.IsSequence() || node_.size() == 0) Fail("expected a list of rows");
    const int rows = static_cast<int>(node_.size());
    const int cols = static_cast<int>(At(0).Vec().size());
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
      const Vector row = At(i).Vec();
      if (row.size() != cols) At(i).Fail("ragged matrix row");
      m.row(i) = row.transpose();
    }
    return m;
  }

  const std::string& file() const { return file_; }

 private:
  YAML::Node node_;
  std::string file_;
};

double Positive(const Node& n) {
  const double v = n.Double();
  if (!(v > 0.0)) n.Fail("expected a positive number");
  return v;
}

int PositiveInt(const Node& n) {
  const long long v = n.Integer();
  if (v < 1 || v > 100000000) n.Fail("expected a positive integer");
  return static_cast<int>(v);
}

// Runs `build` and turns library validation errors into config errors.
template <typename F>
auto Guard(const Node& n, F&& build) -> decltype(build()) {
  try {
    return build();
  } catch (const Error& e) {
    n.Fail(e.what());
  }
}

Matrix ReadCsvMatrix(const Node& n, const std::string& relative) {
  const fs::path path = fs::path(n.file()).parent_path() / relative;
  std::ifstream in(path);
  if (!in) n.Fail("cannot read payoff CSV '" + path.string() + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
      } catch (const std::exception&) {
        throw ConfigError({path.string(), number}, "bad CSV number '" + cell + "'");
      }
    }
    if (!rows.empty() && row.size() != rows[0].size()) {
      throw ConfigError({path.string(), number}, "ragged CSV row");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) n.Fail("empty payoff CSV");
  Matrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[0].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

ConvexSet ParseSet(const Node& n) {
  n.RequireKeys({"kind", "dimension", "lower", "upper", "center", "radius", "offset"});
  const std::string kind = n.Get("kind").String();
  auto bound = [&](const char* key, int d) -> Vector {
    const Node b = n.Get(key);
    if (b.IsScalar()) return Vector::Constant(d, b.Double());
    Vector v = b.Vec();
    if (v.size() != d) b.Fail("expected " + std::to_string(d) + " entries");
    return v;
  };
  ConvexSet set = Guard(n, [&]() -> ConvexSet {
    if (kind == "box") {
      int d = 0;
      if (n.Has("dimension")) {
        d = PositiveInt(n.Get("dimension"));
      } else if (n.Get("lower").IsSequence()) {
        d = static_cast<int>(n.Get("lower").size());
      } else {
        n.Fail("box needs 'dimension' or list bounds");
      }
      return ConvexSet::Box(bound("lower", d), bound("upper", d));
    }
    if (kind == "ball") {
      const double radius = Positive(n.Get("radius"));
      if (n.Has("center")) return ConvexSet::Ball(n.Get("center").Vec(), radius);
      return ConvexSet::Ball(Vector::Zero(PositiveInt(n.Get("dimension"))), radius);
    }
    if (kind == "simplex") return ConvexSet::Simplex(PositiveInt(n.Get("dimension")));
    if (kind == "whole-space") return ConvexSet::WholeSpace(PositiveInt(n.Get("dimension")));
    n.Get("kind").Fail("unknown set kind '" + kind +
                       "' (box, ball, simplex, whole-space)");
  });
  if (n.Has("offset")) {
    const Vector offset = n.Get("offset").Vec();
    set = Guard(n.Get("offset"), [&] { return set.Translated(offset); });
  }
  return set;
}

StepSchedule ParseSchedule(const Node& n, int rounds, const std::optional<ConvexSet>& set) {
  if (n.IsScalar()) {
    const std::string kind = n.String();
    if (kind == "inverse-sqrt") return StepSchedule::InverseSqrt();
    n.Fail("schedule '" + kind + "' needs parameters; write it as a table");
  }
  n.RequireKeys({"kind", "eta", "eta_power", "scale", "D", "Bf", "G"});
  const std::string kind = n.Get("kind").String();
  return Guard(n, [&]() -> StepSchedule {
    if (kind == "constant") {
      if (n.Has("eta") == n.Has("eta_power")) {
        n.Fail("constant schedule needs exactly one of 'eta' or 'eta_power'");
      }
      if (n.Has("eta")) return StepSchedule::Constant(Positive(n.Get("eta")));
      return StepSchedule::Constant(std::pow(static_cast<double>(rounds),
                                             n.Get("eta_power").Double()));
    }
    if (kind == "inverse-sqrt") {
      return StepSchedule::InverseSqrt(n.Has("scale") ? Positive(n.Get("scale")) : 1.0);
    }
    if (kind == "optimized") {
      double d = 0.0;
      if (n.Has("D")) {
        d = n.Get("D").Double();
      } else if (set && set->bounded()) {
        d = set->Diameter();
      } else {
        n.Fail("optimized schedule needs 'D' on an unbounded or unknown set");
      }
      const double bf = n.Has("Bf") ? n.Get("Bf").Double() : 0.0;
      return StepSchedule::Optimized(d, bf, Positive(n.Get("G")), rounds);
    }
    n.Get("kind").Fail("unknown schedule '" + kind +
                       "' (constant, inverse-sqrt, optimized)");
  });
}

LearnerSpec ParseLearner(const Node& n, int rounds, const std::optional<ConvexSet>& set) {
  n.RequireKeys({"kind", "schedule", "mirror", "initial", "random_initial"});
  LearnerSpec spec;
  const std::string kind = n.Get("kind").String();
  if (kind == "gd") {
    spec.kind = LearnerKind::kGradientDescent;
  } else if (kind == "og") {
    spec.kind = LearnerKind::kOptimisticGradient;
  } else if (kind == "md") {
    spec.kind = LearnerKind::kMirrorDescent;
  } else {
    n.Get("kind").Fail("unknown learner '" + kind + "' (gd, og, md)");
  }
  spec.schedule = n.Has("schedule") ? ParseSchedule(n.Get("schedule"), rounds, set)
                                    : StepSchedule::InverseSqrt();
  if (n.Has("mirror")) {
    const std::string mirror = n.Get("mirror").String();
    if (mirror == "entropy") {
      spec.mirror = MirrorKind::kNegativeEntropy;
    } else if (mirror == "euclidean") {
      spec.mirror = MirrorKind::kSquaredEuclidean;
    } else {
      n.Get("mirror").Fail("unknown mirror map '" + mirror + "' (entropy, euclidean)");
    }
  }
  if (n.Has("initial")) spec.initial = n.Get("initial").Vec();
  if (n.Has("random_initial")) spec.random_initial = n.Get("random_initial").Bool();
  return spec;
}

AdversarySpec ParseAdversary(const Node& n) {
  n.RequireKeys({"kind", "scale", "quantile", "score_mean", "score_std", "gradient"});
  AdversarySpec spec;
  const std::string kind = n.Get("kind").String();
  const auto parsed = ParseAdversaryKind(kind);
  if (!parsed) {
    n.Get("kind").Fail("unknown adversary '" + kind +
                       "' (iid-linear, alternating-sign, pinball, "
                       "worst-case-external, constant)");
  }
  spec.kind = *parsed;
  if (n.Has("scale")) spec.scale = n.Get("scale").Double();
  if (n.Has("quantile")) spec.quantile = n.Get("quantile").Double();
  if (n.Has("score_mean")) spec.score_mean = n.Get("score_mean").Double();
  if (n.Has("score_std")) spec.score_std = n.Get("score_std").Double();
  if (n.Has("gradient")) spec.constant = n.Get("gradient").Vec();
  if (spec.kind == AdversaryKind::kConstant && spec.constant.size() == 0) {
    n.Fail("constant adversary needs 'gradient'");
  }
  return spec;
}

ComparatorSpec ParseComparator(const Node& n) {
  n.RequireKeys({"kind", "id", "count", "alpha", "spread", "c_scale", "rho_max", "value",
                 "point", "direction", "c", "b", "q", "a", "rho", "set"});
  ComparatorSpec spec;
  spec.where = n.where();
  spec.kind = n.Get("kind").String();
  static const std::set<std::string> kinds = {
      "constant",       "indicator-point",         "indicator-set",
      "indicator-extremes", "random-indicator-points", "random-indicator-subsets",
      "linear",         "random-unit-linear",      "unit-linear",
      "quadratic",      "random-strongly-convex",  "random-weakly-convex",
      "affine",         "random-affine"};
  if (!kinds.count(spec.kind)) n.Get("kind").Fail("unknown comparator kind '" + spec.kind + "'");
  if (n.Has("id")) spec.id = n.Get("id").String();
  if (n.Has("count")) spec.count = PositiveInt(n.Get("count"));
  if (n.Has("alpha")) spec.alpha = n.Get("alpha").Double();
  if (n.Has("spread")) spec.spread = n.Get("spread").Double();
  if (n.Has("c_scale")) spec.c_scale = n.Get("c_scale").Double();
  if (n.Has("rho_max")) spec.rho_max = n.Get("rho_max").Double();
  if (n.Has("value")) spec.value = n.Get("value").Double();
  for (const char* key : {"point", "direction", "c", "b"}) {
    if (n.Has(key)) spec.vector = n.Get(key).Vec();
  }
  for (const char* key : {"q", "a"}) {
    if (n.Has(key)) spec.matrix = n.Get(key).Mat();
  }
  if (n.Has("rho")) spec.rho = n.Get("rho").Double();
  if (n.Has("set")) spec.subset = ParseSet(n.Get("set"));
  auto need = [&](bool ok, const char* what) {
    if (!ok) n.Fail(spec.kind + " comparator needs '" + what + "'");
  };
  if (spec.kind == "indicator-point") need(spec.vector.has_value(), "point");
  if (spec.kind == "linear") need(spec.vector.has_value(), "direction");
  if (spec.kind == "quadratic") need(spec.matrix.has_value(), "q");
  if (spec.kind == "affine") need(spec.matrix.has_value(), "a");
  if (spec.kind == "indicator-set") need(spec.subset.has_value(), "set");
  return spec;
}

std::vector<ComparatorSpec> ParseFamily(const Node& n) {
  if (!n.IsSequence() || n.size() == 0) n.Fail("expected a non-empty list of comparators");
  std::vector<ComparatorSpec> out;
  for (std::size_t i = 0; i < n.size(); ++i) out.push_back(ParseComparator(n.At(i)));
  return out;
}

SmoothConvexGame ParseGame(const Node& n) {
  n.RequireKeys({"kind", "payoff", "payoff_csv", "sets", "actions", "payoffs", "valuations",
                 "bids", "players", "coupling"});
  const std::string kind = n.Get("kind").String();
  if (kind == "bilinear-zero-sum") {
    if (n.Has("payoff") == n.Has("payoff_csv")) {
      n.Fail("bilinear game needs exactly one of 'payoff' or 'payoff_csv'");
    }
    const Matrix m = n.Has("payoff") ? n.Get("payoff").Mat()
                                     : ReadCsvMatrix(n.Get("payoff_csv"),
                                                     n.Get("payoff_csv").String());
    if (!n.Has("sets")) return Guard(n, [&] { return SmoothConvexGame::BilinearZeroSum(m); });
    const Node sets = n.Get("sets");
    if (!sets.IsSequence() || sets.size() != 2) sets.Fail("expected two sets");
    const ConvexSet a = ParseSet(sets.At(0)), b = ParseSet(sets.At(1));
    return Guard(n, [&] { return SmoothConvexGame::BilinearZeroSum(m, a, b); });
  }
  if (kind == "normal-form") {
    const Node actions = n.Get("actions");
    if (!actions.IsSequence()) actions.Fail("expected a list of action counts");
    std::vector<int> counts;
    for (std::size_t i = 0; i < actions.size(); ++i) counts.push_back(PositiveInt(actions.At(i)));
    const Node payoffs = n.Get("payoffs");
    if (!payoffs.IsSequence()) payoffs.Fail("expected one payoff list per player");
    std::vector<std::vector<double>> tables;
    for (std::size_t i = 0; i < payoffs.size(); ++i) {
      const Vector v = payoffs.At(i).Vec();
      tables.emplace_back(v.data(), v.data() + v.size());
    }
    return Guard(n, [&] { return SmoothConvexGame::NormalForm(counts, tables); });
  }
  if (kind == "first-price-auction") {
    const Vector values = n.Get("valuations").Vec();
    const Vector bids = n.Get("bids").Vec();
    return Guard(n, [&] {
      return FirstPriceAuction(std::vector<double>(values.data(), values.data() + values.size()),
                               std::vector<double>(bids.data(), bids.data() + bids.size()));
    });
  }
  if (kind == "multilinear-quadratic") {
    const Node players = n.Get("players");
    if (!players.IsSequence() || players.size() == 0) players.Fail("expected a list of players");
    const int count = static_cast<int>(players.size());
    std::vector<ConvexSet> sets;
    std::vector<Vector> linear;
    std::vector<double> curvature;
    for (int i = 0; i < count; ++i) {
      const Node p = players.At(i);
      p.RequireKeys({"set", "linear", "curvature"});
      sets.push_back(ParseSet(p.Get("set")));
      linear.push_back(p.Has("linear") ? p.Get("linear").Vec()
                                       : Vector::Zero(sets.back().dimension()));
      curvature.push_back(p.Has("curvature") ? p.Get("curvature").Double() : 0.0);
    }
    std::vector<std::vector<Matrix>> coupling(count, std::vector<Matrix>(count));
    if (n.Has("coupling")) {
      const Node list = n.Get("coupling");
      if (!list.IsSequence()) list.Fail("expected a list of coupling blocks");
      for (std::size_t k = 0; k < list.size(); ++k) {
        const Node c = list.At(k);
        c.RequireKeys({"player", "other", "matrix"});
        const long long i = c.Get("player").Integer(), j = c.Get("other").Integer();
        if (i < 0 || j < 0 || i >= count || j >= count || i == j) {
          c.Fail("coupling needs distinct player indices in [0, n)");
        }
        coupling[i][j] = c.Get("matrix").Mat();
      }
    }
    return Guard(n, [&] {
      return SmoothConvexGame::MultilinearQuadratic(sets, coupling, linear, curvature);
    });
  }
  n.Get("kind").Fail("unknown game kind '" + kind +
                     "' (bilinear-zero-sum, normal-form, first-price-auction, "
                     "multilinear-quadratic)");
}

FuzzConfig ParseFuzz(const Node& n) {
  n.RequireKeys({"suite", "samples", "max_dimension", "rho_max", "sets"});
  FuzzConfig fuzz;
  fuzz.suite = n.Get("suite").String();
  if (fuzz.suite != "key-inequality" && fuzz.suite != "prox-optimality" &&
      fuzz.suite != "affine-representation") {
    n.Get("suite").Fail("unknown fuzz suite '" + fuzz.suite +
                        "' (key-inequality, prox-optimality, affine-representation)");
  }
  if (n.Has("samples")) fuzz.samples = PositiveInt(n.Get("samples"));
  if (n.Has("max_dimension")) fuzz.max_dimension = PositiveInt(n.Get("max_dimension"));
  if (n.Has("rho_max")) {
    fuzz.rho_max = n.Get("rho_max").Double();
    if (!(fuzz.rho_max >= 0.0 && fuzz.rho_max < 1.0)) {
      n.Get("rho_max").Fail("rho_max must lie in [0, 1)");
    }
  }
  if (n.Has("sets")) {
    const Node sets = n.Get("sets");
    if (!sets.IsSequence() || sets.size() == 0) sets.Fail("expected a list of set kinds");
    fuzz.sets.clear();
    for (std::size_t i = 0; i < sets.size(); ++i) {
      const std::string kind = sets.At(i).String();
      if (kind == "box") {
        fuzz.sets.push_back(SetKind::kBox);
      } else if (kind == "ball") {
        fuzz.sets.push_back(SetKind::kBall);
      } else if (kind == "simplex") {
        fuzz.sets.push_back(SetKind::kSimplex);
      } else {
        sets.At(i).Fail("fuzz sets are box, ball or simplex");
      }
    }
  }
  return fuzz;
}

ExperimentConfig ParseExperiment(const Node& root, const std::string& default_name) {
  root.RequireKeys({"name", "mode", "seed", "T", "set", "learner", "adversary", "comparators",
                    "comparator_radius", "game", "learners", "fuzz", "out", "assert_bounds"});
  ExperimentConfig config;
  config.where = root.where();
  config.name = root.Has("name") ? root.Get("name").String() : default_name;
  for (char c : config.name) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.')) {
      root.Get("name").Fail("name may only contain letters, digits, '-', '_' and '.'");
    }
  }
  const std::string mode = root.Get("mode").String();
  if (mode == "adversarial") {
    config.mode = Mode::kAdversarial;
  } else if (mode == "self-play") {
    config.mode = Mode::kSelfPlay;
  } else if (mode == "fuzz") {
    config.mode = Mode::kFuzz;
  } else {
    root.Get("mode").Fail("unknown mode '" + mode + "' (adversarial, self-play, fuzz)");
  }
  if (root.Has("seed")) {
    const Node s = root.Get("seed");
    std::uint64_t seed = 0;
    if (!s.IsScalar() || !YAML::convert<std::uint64_t>::decode(YAML::Load(s.String()), seed)) {
      s.Fail("seed must be a 64-bit unsigned integer");
    }
    config.seed = seed;
  }

  if (root.Has("out")) {
    config.out_dir = (fs::path(root.file()).parent_path() / root.Get("out").String()).string();
  }
  if (root.Has("assert_bounds")) config.assert_bounds = root.Get("assert_bounds").Bool();

  if (config.mode == Mode::kFuzz) {
    config.fuzz = ParseFuzz(root.Get("fuzz"));
    return config;
  }

  config.rounds = PositiveInt(root.Get("T"));
  config.comparators = ParseFamily(root.Get("comparators"));
  if (config.mode == Mode::kAdversarial) {
    config.set = ParseSet(root.Get("set"));
    config.learner = ParseLearner(root.Get("learner"), config.rounds, config.set);
    config.adversary = ParseAdversary(root.Get("adversary"));
    if (root.Has("comparator_radius")) {
      config.comparator_radius = Positive(root.Get("comparator_radius"));
    }
    // Surface learner and adversary construction errors now, with lines.
    std::mt19937_64 rng(config.seed);
    Guard(root.Get("learner"), [&] { return MakeLearner(config.learner, *config.set, rng); });
    Guard(root.Get("adversary"), [&] {
      return MakeAdversary(config.adversary, config.set->dimension(), config.seed);
    });
    return config;
  }

  config.game = ParseGame(root.Get("game"));
  const int n = config.game->num_players();
  if (root.Has("learners") == root.Has("learner")) {
    root.Fail("self-play needs exactly one of 'learner' (shared) or 'learners' (per player)");
  }
  if (root.Has("learner")) {
    for (int i = 0; i < n; ++i) {
      config.players.push_back(
          ParseLearner(root.Get("learner"), config.rounds, config.game->set(i)));
    }
  } else {
    const Node list = root.Get("learners");
    if (!list.IsSequence() || static_cast<int>(list.size()) != n) {
      list.Fail("expected " + std::to_string(n) + " learners, one per player");
    }
    for (int i = 0; i < n; ++i) {
      config.players.push_back(ParseLearner(list.At(i), config.rounds, config.game->set(i)));
    }
  }
  std::mt19937_64 rng(config.seed);
  for (int i = 0; i < n; ++i) {
    const Node where = root.Has("learner") ? root.Get("learner") : root.Get("learners").At(i);
    Guard(where, [&] { return MakeLearner(config.players[i], config.game->set(i), rng); });
  }
  return config;
}

YAML::Node LoadYaml(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({path, 0}, "cannot open config file");
  try {
    return YAML::Load(in);
  } catch (const YAML::ParserException& e) {
    throw ConfigError({path, e.mark.line + 1}, "YAML syntax error: " + e.msg);
  }
}

}  // namespace

std::string Location::Prefix() const {
  if (line > 0) return file + ":" + std::to_string(line) + ": ";
  return file + ": ";
}

const char* ModeName(Mode mode) {
  switch (mode) {
    case Mode::kAdversarial: return "adversarial";
    case Mode::kSelfPlay: return "self-play";
    case Mode::kFuzz: return "fuzz";
  }
  return "unknown";
}

std::vector<ExperimentConfig> LoadConfigs(const std::string& path) {
  const Node root(LoadYaml(path), path);
  if (!root.IsMap()) root.Fail("config must be a table");
  if (root.Has("batch")) {
    root.RequireKeys({"batch"});
    const Node list = root.Get("batch");
    if (!list.IsSequence() || list.size() == 0) list.Fail("expected a list of config paths");
    std::vector<ExperimentConfig> out;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const fs::path child = fs::path(path).parent_path() / list.At(i).String();
      if (!fs::exists(child)) list.At(i).Fail("no such config '" + child.string() + "'");
      for (ExperimentConfig& c : LoadConfigs(child.string())) out.push_back(std::move(c));
    }
    return out;
  }
  return {ParseExperiment(root, fs::path(path).stem().string())};
}

ComparatorFamily ResolveFamily(const std::vector<ComparatorSpec>& specs,
                               const ConvexSet& set, std::mt19937_64& rng) {
  ComparatorFamily family;
  const int d = set.dimension();
  for (const ComparatorSpec& s : specs) {
    try {
      std::vector<Comparator> made;
      if (s.kind == "constant") {
        made.push_back(Comparator::Constant(d, s.value));
      } else if (s.kind == "indicator-point") {
        made.push_back(Comparator::IndicatorPoint(*s.vector));
      } else if (s.kind == "indicator-set") {
        made.push_back(Comparator::IndicatorSet(*s.subset));
      } else if (s.kind == "indicator-extremes") {
        made = IndicatorPointsAtExtremes(set);
      } else if (s.kind == "random-indicator-points") {
        made = RandomIndicatorPoints(set, s.count, rng);
      } else if (s.kind == "random-indicator-subsets") {
        made = RandomIndicatorSubsets(set, s.count, rng);
      } else if (s.kind == "linear") {
        made.push_back(Comparator::Linear(*s.vector));
      } else if (s.kind == "random-unit-linear") {
        made = RandomUnitLinear(d, s.count, rng);
      } else if (s.kind == "unit-linear") {
        if (specs.size() != 1) {
          throw ConfigError(s.where, "unit-linear must be the only comparator entry");
        }
        return ComparatorFamily::UnitLinear(d);
      } else if (s.kind == "quadratic") {
        made.push_back(Comparator::Quadratic(
            *s.matrix, s.vector ? *s.vector : Vector::Zero(s.matrix->rows()), s.rho));
      } else if (s.kind == "random-strongly-convex") {
        made = RandomStronglyConvexQuadratics(d, s.count, s.alpha, s.spread, s.c_scale, rng);
      } else if (s.kind == "random-weakly-convex") {
        made = RandomWeaklyConvexQuadratics(d, s.count, s.rho_max, rng);
      } else if (s.kind == "affine") {
        made.push_back(AffineToComparator(
            *s.matrix, s.vector ? *s.vector : Vector::Zero(s.matrix->rows())));
      } else if (s.kind == "random-affine") {
        made = RandomAffineComparators(set, s.count, rng);
      }
      for (std::size_t k = 0; k < made.size(); ++k) {
        if (made[k].dimension() != d) {
          throw ConfigError(s.where, s.kind + " comparator has dimension " +
                                         std::to_string(made[k].dimension()) +
                                         " but the set has dimension " + std::to_string(d));
        }
        if (!s.id.empty()) {
          made[k] = made[k].WithId(made.size() == 1 ? s.id : s.id + "#" + std::to_string(k));
        }
        family.Add(made[k]);
      }
    } catch (const Error& e) {
      throw ConfigError(s.where, e.what());
    }
  }
  return family;
}

}  // namespace proxregret::cli
