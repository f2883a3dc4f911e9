#pragma once

#include <array>
#include <vector>

#include "uavnav/mapping/occupancy_grid.hpp"

namespace uavnav::mapping {

/// Corners of the map's bounding box in pixel coordinates (i, j). "Upper"
/// is +j, "left" is -i, in the box frame rotated by `angle`.
struct MapCorners {
  Vec2 upper_left;
  Vec2 upper_right;
  Vec2 lower_right;
  Vec2 lower_left;
  /// Orientation of the box's "horizontal" edge, in (-pi/4, pi/4].
  double angle = 0.0;

  double area() const;
};

/// Minimum-area enclosing rectangle of the centres of occupied cells.
/// Throws ContractViolation when there are no occupied cells or the cells
/// are collinear (zero-area box).
MapCorners extract_corners(const OccupancyGrid& grid);

struct RotationEstimate {
  double theta = 0.0;
  /// Deviation of each detected line from its nearest axis, longest first.
  std::vector<double> line_angles;
  /// Fewer than three lines were found; theta is the dominant line's angle.
  bool fallback = false;
};

struct LineDetectionParams {
  double angle_bin = deg2rad(0.5);
  /// Minimum number of occupied cells supporting a line.
  int min_votes = 10;
  double suppress_angle = deg2rad(10.0);
  double suppress_offset = 4.0;
  double inlier_distance = 1.5;
};

/// Map rotation as the weighted sum of the axis deviations of the three
/// longest wall lines. Lines come from a Hough accumulation over occupied
/// cells and are refined by a total-least-squares fit to their inliers.
/// Weights are normalised to sum to one. Throws ContractViolation when no
/// line is found or the weights sum to zero.
RotationEstimate estimate_rotation(const OccupancyGrid& grid,
                                   const std::array<double, 3>& weights = {1.0 / 3, 1.0 / 3, 1.0 / 3},
                                   const LineDetectionParams& params = {});

}  // namespace uavnav::mapping
