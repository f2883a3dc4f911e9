#pragma once

#include <span>
#include <vector>

#include "uavnav/mapping/occupancy_grid.hpp"
#include "uavnav/sim/world.hpp"

namespace uavnav::mapping {

struct MapBuildOptions {
  double resolution = 0.1;
  /// Extra border around the world bounds.
  double margin = 0.5;
  double max_range = lidar::kDefaultMaxRange;
  LogOddsParams log_odds;
};

/// Empty grid covering the world bounds plus margin.
OccupancyGrid make_grid_for(const sim::WorldConfig& world, const MapBuildOptions& options);

/// Casts a noise-free scan at each known pose and integrates it.
OccupancyGrid build_map(const sim::WorldConfig& world, std::span<const Vec2> poses,
                        const MapBuildOptions& options = {});

/// Survey poses on a square lattice with the given spacing, keeping those
/// with at least `clearance` metres to every obstacle.
std::vector<Vec2> survey_poses(const sim::WorldConfig& world, double spacing, double clearance);

}  // namespace uavnav::mapping
