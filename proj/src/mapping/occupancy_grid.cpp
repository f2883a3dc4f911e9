#include "uavnav/mapping/occupancy_grid.hpp"

#include <algorithm>
#include <limits>

namespace uavnav::mapping {

OccupancyGrid::OccupancyGrid(int width, int height, double resolution, Vec2 origin,
                             LogOddsParams params)
    : width_(width), height_(height), resolution_(resolution), origin_(origin), params_(params) {
  if (width <= 0 || height <= 0) throw ContractViolation("grid: dimensions must be positive");
  if (!(resolution > 0.0)) throw ContractViolation("grid: resolution must be > 0");
  if (!(params.min < 0.0 && params.max > 0.0)) throw ContractViolation("grid: bad log-odds clamp");
  cells_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0.0);
}

void OccupancyGrid::set(int i, int j, double log_odds) {
  cells_[index(i, j)] = std::clamp(log_odds, params_.min, params_.max);
}

void OccupancyGrid::add(int i, int j, double delta) {
  double& c = cells_[index(i, j)];
  c = std::clamp(c + delta, params_.min, params_.max);
}

CellClass OccupancyGrid::classify(int i, int j) const {
  const double l = at(i, j);
  if (l > params_.occupied_threshold) return CellClass::Occupied;
  if (l < params_.free_threshold) return CellClass::Free;
  return CellClass::Unknown;
}

CellIndex OccupancyGrid::cell_of(Vec2 world) const {
  return {static_cast<int>(std::floor((world.x - origin_.x) / resolution_)),
          static_cast<int>(std::floor((world.y - origin_.y) / resolution_))};
}

Vec2 OccupancyGrid::cell_center(int i, int j) const {
  return {origin_.x + (i + 0.5) * resolution_, origin_.y + (j + 0.5) * resolution_};
}

Vec2 OccupancyGrid::to_pixel(Vec2 world) const {
  return {(world.x - origin_.x) / resolution_ - 0.5, (world.y - origin_.y) / resolution_ - 0.5};
}

Vec2 OccupancyGrid::to_world(Vec2 pixel) const {
  return {origin_.x + (pixel.x + 0.5) * resolution_, origin_.y + (pixel.y + 0.5) * resolution_};
}

std::vector<CellIndex> trace_cells(const OccupancyGrid& grid, Vec2 a, Vec2 b) {
  std::vector<CellIndex> out;
  const double res = grid.resolution();
  // Work in continuous cell units.
  const double ax = (a.x - grid.origin().x) / res;
  const double ay = (a.y - grid.origin().y) / res;
  const double bx = (b.x - grid.origin().x) / res;
  const double by = (b.y - grid.origin().y) / res;
  CellIndex c{static_cast<int>(std::floor(ax)), static_cast<int>(std::floor(ay))};
  const CellIndex end{static_cast<int>(std::floor(bx)), static_cast<int>(std::floor(by))};
  const double dx = bx - ax;
  const double dy = by - ay;
  const int step_i = dx > 0 ? 1 : (dx < 0 ? -1 : 0);
  const int step_j = dy > 0 ? 1 : (dy < 0 ? -1 : 0);
  constexpr double inf = std::numeric_limits<double>::infinity();
  const double t_delta_x = step_i != 0 ? std::abs(1.0 / dx) : inf;
  const double t_delta_y = step_j != 0 ? std::abs(1.0 / dy) : inf;
  double t_max_x = step_i > 0 ? (std::floor(ax) + 1.0 - ax) / dx
                 : step_i < 0 ? (ax - std::floor(ax)) / -dx
                              : inf;
  double t_max_y = step_j > 0 ? (std::floor(ay) + 1.0 - ay) / dy
                 : step_j < 0 ? (ay - std::floor(ay)) / -dy
                              : inf;
  const std::size_t max_steps =
      static_cast<std::size_t>(std::abs(end.i - c.i) + std::abs(end.j - c.j)) + 1;
  out.reserve(max_steps);
  while (grid.in_bounds(c)) {
    out.push_back(c);
    if (c == end || out.size() > max_steps) break;
    if (t_max_x < t_max_y) {
      c.i += step_i;
      t_max_x += t_delta_x;
    } else {
      c.j += step_j;
      t_max_y += t_delta_y;
    }
  }
  return out;
}

constexpr double kBoundaryNudge = 1e-9;

void integrate_scan(OccupancyGrid& grid, const PoseEstimate& pose, const lidar::RawScan& scan) {
  const Vec2 origin{pose.x, pose.y};
  if (!grid.in_bounds(grid.cell_of(origin))) {
    throw ContractViolation("integrate_scan: pose outside grid");
  }
  const LogOddsParams& p = grid.params();
  for (int d = 0; d < lidar::kBeams; ++d) {
    const double r = scan.ranges[static_cast<std::size_t>(d)];
    const double bearing = pose.theta + deg2rad(d);
    const bool hit = r < scan.max_range;
    // A return lying on a cell boundary belongs to the cell beyond it, the
    // one holding the surface; plain floor would pick the near cell for
    // beams travelling in -x or -y.
    const Vec2 end = origin + Vec2{std::cos(bearing), std::sin(bearing)} * (hit ? r + kBoundaryNudge : r);
    const auto cells = trace_cells(grid, origin, end);
    const CellIndex end_cell = grid.cell_of(end);
    for (std::size_t k = 1; k < cells.size(); ++k) {
      const CellIndex c = cells[k];
      if (c == end_cell) {
        grid.add(c.i, c.j, hit ? p.hit : p.miss);
      } else {
        grid.add(c.i, c.j, p.miss);
      }
    }
  }
}

}  // namespace uavnav::mapping
