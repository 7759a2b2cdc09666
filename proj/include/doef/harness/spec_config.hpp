#pragma once

#include "doef/config.hpp"
#include "doef/harness/experiment.hpp"

namespace doef::harness {

/// Applies configuration keys to `spec`. Unknown keys raise ParameterError.
void apply_config(const Config& cfg, ExperimentSpec& spec);

/// Every setting of `spec` as configuration keys; apply_config of the result is lossless.
Config to_config(const ExperimentSpec& spec);

/// FNV-1a over the canonical configuration text.
std::uint64_t config_hash(const ExperimentSpec& spec);

}  // namespace doef::harness
