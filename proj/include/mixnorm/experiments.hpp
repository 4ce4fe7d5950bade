#pragma once

#include "mixnorm/report.hpp"

#include <string>
#include <vector>

namespace mixnorm {

struct ExperimentInfo {
  std::string id;
  std::string result;       // the statement the experiment exercises
  std::string description;
};

/// The 17 experiments in listing order.
const std::vector<ExperimentInfo>& experiment_catalog();

/// Runs one experiment. Unknown ids and malformed settings raise UsageError;
/// module errors propagate with the experiment id prepended.
ExperimentReport run_experiment(const std::string& id, const Config& config = {});

}  // namespace mixnorm
