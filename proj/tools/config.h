#ifndef PROXREGRET_TOOLS_CONFIG_H_
#define PROXREGRET_TOOLS_CONFIG_H_

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "proxregret/adversaries.h"
#include "proxregret/families.h"
#include "proxregret/games.h"
#include "proxregret/geometry.h"

namespace proxregret::cli {

// A position in a config file; line is 1-based, 0 when unknown.
struct Location {
  std::string file;
  int line = 0;

  std::string Prefix() const;  // "file:line: "
};

// Any problem attributable to the configuration. Exit status 2.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const Location& where, const std::string& message)
      : std::runtime_error(where.Prefix() + message) {}
};

enum class Mode { kAdversarial, kSelfPlay, kFuzz };

const char* ModeName(Mode mode);

// One entry of a comparator family. Generators are expanded per player set
// at run time, so the same spec serves players of different dimensions.
struct ComparatorSpec {
  std::string kind;
  Location where;
  std::string id;  // optional label
  int count = 1;
  double alpha = 0.1;
  double spread = 1.0;
  double c_scale = 1.0;
  double rho_max = 0.5;
  double value = 0.0;
  std::optional<Vector> vector;  // point, direction, c or b
  std::optional<Matrix> matrix;  // q or a
  std::optional<double> rho;
  std::optional<ConvexSet> subset;
};

struct FuzzConfig {
  std::string suite = "key-inequality";
  int samples = 10000;
  int max_dimension = 8;
  double rho_max = 0.95;
  std::vector<SetKind> sets = {SetKind::kBox, SetKind::kBall, SetKind::kSimplex};
};

struct ExperimentConfig {
  std::string name;
  Location where;  // the file the experiment came from
  Mode mode = Mode::kAdversarial;
  std::uint64_t seed = 0;
  int rounds = 0;
  // Output directory relative to the config file; --out takes precedence.
  std::optional<std::string> out_dir;
  bool assert_bounds = false;

  // adversarial
  std::optional<ConvexSet> set;
  LearnerSpec learner;
  AdversarySpec adversary;
  std::optional<double> comparator_radius;

  // self-play
  std::optional<SmoothConvexGame> game;
  std::vector<LearnerSpec> players;

  std::vector<ComparatorSpec> comparators;
  FuzzConfig fuzz;
};

// Parses one experiment file, or every file named by a batch file
// (`batch: [a.yaml, b.yaml]`, paths relative to the batch file).
std::vector<ExperimentConfig> LoadConfigs(const std::string& path);

// Expands the comparator specs against one player's set.
ComparatorFamily ResolveFamily(const std::vector<ComparatorSpec>& specs,
                               const ConvexSet& set, std::mt19937_64& rng);

}  // namespace proxregret::cli

#endif  // PROXREGRET_TOOLS_CONFIG_H_
