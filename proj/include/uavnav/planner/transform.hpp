#pragma once

#include <string_view>
#include <vector>

#include "uavnav/mapping/map_geometry.hpp"
#include "uavnav/planner/rrt.hpp"

namespace uavnav::planner {

enum class TransformMode {
  /// x = (r cos(theta) + x_pr) * sx,  y = (r sin(theta) + y_pr) * sy, with
  /// r = |p|, (x_pr, y_pr) = p rotated by theta, sx = (x_max_g - x_min_g) /
  /// |UR - UL|, sy = (y_max_g - y_min_g) / |UR - LR|. No offset.
  Literal,
  /// q = R(theta) (p - LL), x = x_min_g + q.x * sx, y = y_min_g + q.y * sy.
  Affine,
};

const char* to_string(TransformMode m);
TransformMode parse_transform_mode(std::string_view name);

/// Map (pixel) -> world mapping parameters.
struct TransformConfig {
  mapping::MapCorners corners;
  double x_min_g = 0.0;
  double x_max_g = 1.0;
  double y_min_g = 0.0;
  double y_max_g = 1.0;
  double theta = 0.0;
  TransformMode mode = TransformMode::Affine;

  /// Throws ContractViolation on zero-length corner edges or empty world
  /// ranges.
  void validate() const;
  double x_ratio() const;
  double y_ratio() const;
};

Vec2 transform_point(Vec2 pixel, const TransformConfig& cfg);

/// Inverse of the affine mode. Throws ContractViolation in literal mode.
Vec2 inverse_transform_point(Vec2 world, const TransformConfig& cfg);

struct WorldPath {
  std::vector<Vec2> waypoints;
  TransformMode mode = TransformMode::Affine;
};

WorldPath transform_path(const PixelPath& path, const TransformConfig& cfg);

}  // namespace uavnav::planner
