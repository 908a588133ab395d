// Runs proximal-regret experiments described by YAML configs.
//
// Exit status: 0 on success, 1 when bounds are asserted (--assert-bounds or
// `assert_bounds: true`) and a bound or fuzz threshold is violated, 2 on
// configuration errors, 3 on runtime failures.

#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "config.h"
#include "proxregret/error.h"
#include "runner.h"

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct Outcome {
  proxregret::cli::ExperimentResult result;
  std::string error;
};

}  // namespace

int main(int argc, char** argv) {
  using namespace proxregret::cli;

  CLI::App app{"Proximal regret experiment runner"};
  std::vector<std::string> config_paths;
  std::string out_dir = "runs";
  std::optional<std::uint64_t> seed;
  bool assert_bounds = false;
  int workers = 1;
  app.add_option("-c,--config", config_paths, "Experiment or batch YAML file (repeatable)")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("-o,--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--seed", seed, "Override the seed of every experiment");
  app.add_flag("--assert-bounds", assert_bounds,
               "Exit with status 1 if any bound or fuzz threshold is violated");
  app.add_option("-j,--workers", workers, "Experiments run in parallel")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  std::vector<ExperimentConfig> configs;
  try {
    std::set<std::string> names;
    for (const std::string& path : config_paths) {
      for (ExperimentConfig& c : LoadConfigs(path)) {
        if (!names.insert(c.name).second) {
          throw ConfigError(c.where, "duplicate experiment name '" + c.name + "'");
        }
        if (seed) c.seed = *seed;
        configs.push_back(std::move(c));
      }
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }

  const bool out_given = app.count("--out") > 0;
  std::vector<Outcome> outcomes(configs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      try {
        const bool explicit_out = out_given || !configs[i].out_dir;
        outcomes[i].result =
            RunExperiment(configs[i], explicit_out ? out_dir : *configs[i].out_dir);
      } catch (const std::exception& e) {
        outcomes[i].error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  const int threads = std::min<int>(workers, static_cast<int>(configs.size()));
  for (int k = 1; k < threads; ++k) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();

  int violations = 0;
  bool failed = false;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const Outcome& o = outcomes[i];
    if (!o.error.empty()) {
      std::fprintf(stderr, "%s: %s\n", configs[i].name.c_str(), o.error.c_str());
      failed = true;
      continue;
    }
    std::printf("%s\n", o.result.headline.c_str());
    if (assert_bounds || configs[i].assert_bounds) violations += o.result.violations;
  }
  if (failed) return kExitRuntime;
  if (violations > 0) return kExitViolation;
  return 0;
}
