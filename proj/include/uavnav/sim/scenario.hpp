#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "json.hpp"

#include "uavnav/sim/world.hpp"

namespace uavnav::sim {

enum class ScenarioTemplate { Farmland, Corridor, Empty };

ScenarioTemplate parse_template(std::string_view name);
const char* to_string(ScenarioTemplate t);

/// Knobs for the farmland generator. Defaults give a 40 m x 40 m field,
/// fenced, with a few fixed landmarks and 4-8 movable bars.
struct FarmlandParams {
  double half_size = 20.0;
  int min_bars = 4;
  int max_bars = 8;
  double bar_thickness = 0.3;
  double bar_length_min = 3.0;
  double bar_length_max = 8.0;
  double bar_center_range = 14.0;
  /// Targets are drawn uniformly from [-target_range, target_range]^2 with
  /// a disk of radius target_exclusion around the start removed.
  double target_range = 12.0;
  double target_exclusion = 3.0;
  /// Minimum obstacle clearance kept around the start and the target.
  double start_clearance = 2.5;
  double target_clearance = 2.0;
  double col_threshold = 1.0;
};

/// Deterministic function of (seed, template, params).
WorldConfig spawn_scenario(std::uint64_t seed, ScenarioTemplate tmpl,
                           const FarmlandParams& params = {});

/// Scenario file schema "uavnav.scenario/1"; see docs/formats.md.
nlohmann::json scenario_to_json(const WorldConfig& world);
/// Throws ConfigError naming the offending field.
WorldConfig scenario_from_json(const nlohmann::json& j);

void save_scenario(const WorldConfig& world, const std::string& path);
WorldConfig load_scenario(const std::string& path);

}  // namespace uavnav::sim
