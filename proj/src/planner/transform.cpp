#include "uavnav/planner/transform.hpp"

#include <string>

namespace uavnav::planner {

const char* to_string(TransformMode m) {
  return m == TransformMode::Literal ? "literal" : "affine";
}

TransformMode parse_transform_mode(std::string_view name) {
  if (name == "literal") return TransformMode::Literal;
  if (name == "affine") return TransformMode::Affine;
  throw ConfigError("mode: expected 'literal' or 'affine', got '" + std::string(name) + "'");
}

void TransformConfig::validate() const {
  if (!(distance(corners.upper_right, corners.upper_left) > 0.0)) {
    throw ContractViolation("transform: upper edge |UR - UL| has zero length");
  }
  if (!(distance(corners.upper_right, corners.lower_right) > 0.0)) {
    throw ContractViolation("transform: right edge |UR - LR| has zero length");
  }
  if (!(x_max_g > x_min_g)) throw ContractViolation("transform: x_max_g must exceed x_min_g");
  if (!(y_max_g > y_min_g)) throw ContractViolation("transform: y_max_g must exceed y_min_g");
}

double TransformConfig::x_ratio() const {
  return (x_max_g - x_min_g) / distance(corners.upper_right, corners.upper_left);
}

double TransformConfig::y_ratio() const {
  return (y_max_g - y_min_g) / distance(corners.upper_right, corners.lower_right);
}

Vec2 transform_point(Vec2 pixel, const TransformConfig& cfg) {
  cfg.validate();
  if (cfg.mode == TransformMode::Literal) {
    const double r = pixel.norm();
    const Vec2 pr = rotate(pixel, cfg.theta);
    return {(r * std::cos(cfg.theta) + pr.x) * cfg.x_ratio(),
            (r * std::sin(cfg.theta) + pr.y) * cfg.y_ratio()};
  }
  const Vec2 q = rotate(pixel - cfg.corners.lower_left, cfg.theta);
  return {cfg.x_min_g + q.x * cfg.x_ratio(), cfg.y_min_g + q.y * cfg.y_ratio()};
}

Vec2 inverse_transform_point(Vec2 world, const TransformConfig& cfg) {
  cfg.validate();
  if (cfg.mode != TransformMode::Affine) {
    throw ContractViolation("inverse_transform_point: literal mode has no closed-form inverse");
  }
  const Vec2 q{(world.x - cfg.x_min_g) / cfg.x_ratio(), (world.y - cfg.y_min_g) / cfg.y_ratio()};
  return rotate(q, -cfg.theta) + cfg.corners.lower_left;
}

WorldPath transform_path(const PixelPath& path, const TransformConfig& cfg) {
  WorldPath out;
  out.mode = cfg.mode;
  out.waypoints.reserve(path.size());
  for (const Vec2& p : path) out.waypoints.push_back(transform_point(p, cfg));
  return out;
}

}  // namespace uavnav::planner
