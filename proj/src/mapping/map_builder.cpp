#include "uavnav/mapping/map_builder.hpp"

namespace uavnav::mapping {

OccupancyGrid make_grid_for(const sim::WorldConfig& world, const MapBuildOptions& options) {
  const double w = world.x_max - world.x_min + 2.0 * options.margin;
  const double h = world.y_max - world.y_min + 2.0 * options.margin;
  const int cols = static_cast<int>(std::ceil(w / options.resolution - 1e-9));
  const int rows = static_cast<int>(std::ceil(h / options.resolution - 1e-9));
  return OccupancyGrid(cols, rows, options.resolution,
                       {world.x_min - options.margin, world.y_min - options.margin},
                       options.log_odds);
}

OccupancyGrid build_map(const sim::WorldConfig& world, std::span<const Vec2> poses,
                        const MapBuildOptions& options) {
  OccupancyGrid grid = make_grid_for(world, options);
  for (const Vec2& p : poses) {
    const auto scan = lidar::cast_scan(world, p, 0.0, options.max_range, lidar::NoiseModel{}, 0);
    integrate_scan(grid, {p.x, p.y, 0.0}, scan);
  }
  return grid;
}

std::vector<Vec2> survey_poses(const sim::WorldConfig& world, double spacing, double clearance) {
  if (!(spacing > 0.0)) throw ContractViolation("survey_poses: spacing must be > 0");
  std::vector<Vec2> out;
  const double cx = 0.5 * (world.x_min + world.x_max);
  const double cy = 0.5 * (world.y_min + world.y_max);
  const int nx = static_cast<int>((world.x_max - world.x_min) / (2.0 * spacing));
  const int ny = static_cast<int>((world.y_max - world.y_min) / (2.0 * spacing));
  for (int b = -ny; b <= ny; ++b) {
    for (int a = -nx; a <= nx; ++a) {
      const Vec2 p{cx + a * spacing, cy + b * spacing};
      if (world.contains(p) && sim::nearest_obstacle_distance(p, world) >= clearance) out.push_back(p);
    }
  }
  return out;
}

}  // namespace uavnav::mapping
