#pragma once

#include <string_view>
#include <vector>

#include "doef/harness/experiment.hpp"

namespace doef::harness {

/// fig2a, fig2b, fig3a, fig3b, fig5_workload.
std::vector<std::string_view> preset_names();
ExperimentSpec preset(std::string_view name);

}  // namespace doef::harness
