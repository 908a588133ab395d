#ifndef PROXREGRET_TOOLS_RUNNER_H_
#define PROXREGRET_TOOLS_RUNNER_H_

#include <string>

#include "config.h"

namespace proxregret::cli {

// Slack below which a regret value counts as exceeding its bound.
inline constexpr double kBoundTolerance = 1e-6;

struct ExperimentResult {
  std::string name;
  std::string headline;  // one-line human summary
  int violations = 0;    // bound violations or failed fuzz samples
};

// Runs one experiment and writes trace, report.csv and summary.json under
// `out_dir/<name>/`. Library failures propagate as proxregret::Error.
ExperimentResult RunExperiment(const ExperimentConfig& config,
                               const std::string& out_dir);

}  // namespace proxregret::cli

#endif  // PROXREGRET_TOOLS_RUNNER_H_
