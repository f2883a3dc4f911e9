#pragma once

#include <string>

#include "json.hpp"

#include "uavnav/rl/training.hpp"

namespace uavnav::cli {

/// Full snapshot, sectioned as episode / sensing / reset / topology / adam /
/// learner / farmland plus a few top-level knobs.
nlohmann::json training_config_to_json(const rl::TrainingConfig& cfg);

/// Applies a (possibly partial) snapshot. Unknown keys and wrongly typed
/// values raise ConfigError naming the field, e.g. "episode.n_eps: expected
/// an integer". The result is validated before returning.
void apply_training_overrides(rl::TrainingConfig& cfg, const nlohmann::json& overrides);

/// Reads a JSON file; ConfigError on parse errors, IoError when unreadable.
nlohmann::json read_json_file(const std::string& path);

}  // namespace uavnav::cli
