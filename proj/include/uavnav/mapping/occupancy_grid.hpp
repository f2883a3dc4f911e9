#pragma once

#include <optional>
#include <span>
#include <vector>

#include "uavnav/common.hpp"
#include "uavnav/lidar/lidar.hpp"

namespace uavnav::mapping {

struct LogOddsParams {
  double hit = 0.85;
  double miss = -0.4;
  double min = -4.0;
  double max = 4.0;
  double occupied_threshold = 1.0;
  double free_threshold = -1.0;
};

enum class CellClass { Free, Unknown, Occupied };

/// Integer cell address: i along x (columns), j along y (rows, increasing
/// northward). Pixel coordinates used by the planner are the same indices.
struct CellIndex {
  int i = 0;
  int j = 0;
  bool operator==(const CellIndex&) const = default;
};

struct PoseEstimate {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
};

/// Row-major log-odds grid. Cell (i, j) covers
/// [origin.x + i*res, origin.x + (i+1)*res) x [origin.y + j*res, ...).
class OccupancyGrid {
 public:
  OccupancyGrid() = default;
  OccupancyGrid(int width, int height, double resolution, Vec2 origin, LogOddsParams params = {});

  int width() const { return width_; }
  int height() const { return height_; }
  double resolution() const { return resolution_; }
  Vec2 origin() const { return origin_; }
  const LogOddsParams& params() const { return params_; }

  bool in_bounds(int i, int j) const { return i >= 0 && j >= 0 && i < width_ && j < height_; }
  bool in_bounds(CellIndex c) const { return in_bounds(c.i, c.j); }

  double at(int i, int j) const { return cells_[index(i, j)]; }
  /// Sets a cell, clamping into [min, max].
  void set(int i, int j, double log_odds);
  /// Adds to a cell, clamping into [min, max].
  void add(int i, int j, double delta);

  CellClass classify(int i, int j) const;
  bool is_occupied(int i, int j) const { return classify(i, j) == CellClass::Occupied; }

  /// Cell containing a world point (may be out of bounds).
  CellIndex cell_of(Vec2 world) const;
  Vec2 cell_center(int i, int j) const;
  /// World point -> continuous pixel coordinates (cell centres at integers).
  Vec2 to_pixel(Vec2 world) const;
  Vec2 to_world(Vec2 pixel) const;

  std::span<const double> cells() const { return cells_; }

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(i);
  }

  int width_ = 0;
  int height_ = 0;
  double resolution_ = 1.0;
  Vec2 origin_;
  LogOddsParams params_;
  std::vector<double> cells_;
};

/// Cells visited by the segment a -> b (world coordinates), in order,
/// starting with the cell containing a and ending with the cell containing
/// b. Amanatides-Woo traversal; stops at the grid border.
std::vector<CellIndex> trace_cells(const OccupancyGrid& grid, Vec2 a, Vec2 b);

/// Log-odds update for one scan taken at `pose`. For each beam, the cells
/// strictly between the sensor cell and the endpoint cell get the miss
/// update; the endpoint cell gets the hit update when the beam returned
/// short of max_range and the miss update otherwise.
void integrate_scan(OccupancyGrid& grid, const PoseEstimate& pose, const lidar::RawScan& scan);

}  // namespace uavnav::mapping
