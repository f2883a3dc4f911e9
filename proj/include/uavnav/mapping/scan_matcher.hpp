#pragma once

#include <vector>

#include "uavnav/mapping/occupancy_grid.hpp"

namespace uavnav::mapping {

/// Level 0 is the input grid; level k+1 halves the linear resolution of
/// level k by 2x2 max-pooling of log-odds, so an occupied cell stays
/// occupied at every coarser level.
struct MapPyramid {
  std::vector<OccupancyGrid> levels;
};

/// Throws ContractViolation when n_levels < 1 or n_levels exceeds
/// floor(log2(min(width, height))).
MapPyramid build_pyramid(const OccupancyGrid& grid, int n_levels);

/// Half-widths of the pose search box around the initial guess.
struct SearchWindow {
  double linear = 0.5;
  double angular = deg2rad(10.0);
};

struct MatchResult {
  PoseEstimate pose;
  double score = 0.0;
  /// Set when the scan had no returns short of max_range; pose == init.
  bool degenerate = false;
};

/// Sum over beam endpoints of the bilinearly interpolated occupancy
/// probability of `grid`.
double scan_score(const OccupancyGrid& grid, const lidar::RawScan& scan, const PoseEstimate& pose);

/// Coarse-to-fine exhaustive search. The coarsest level scans the whole
/// window; every finer level searches +-2 of its own step around the
/// incumbent, and two extra half-step rounds run on level 0. Ties go to
/// the smaller perturbation, then lexicographically smaller (dx, dy, dtheta).
MatchResult match_scan(const MapPyramid& pyramid, const lidar::RawScan& scan,
                       const PoseEstimate& init, const SearchWindow& window);

}  // namespace uavnav::mapping
