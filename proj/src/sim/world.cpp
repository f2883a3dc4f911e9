#include "uavnav/sim/world.hpp"

#include <algorithm>
#include <limits>

namespace uavnav::sim {
namespace {

constexpr std::array<std::array<int, 2>, kNumActions> kActionTable{{
    {1, -1}, {1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}}};

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = ab.dot(ab);
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return distance(p, a + ab * t);
}

bool segments_intersect(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2) {
  const auto orient = [](Vec2 a, Vec2 b, Vec2 c) { return (b - a).cross(c - a); };
  const double d1 = orient(q1, q2, p1);
  const double d2 = orient(q1, q2, p2);
  const double d3 = orient(p1, p2, q1);
  const double d4 = orient(p1, p2, q2);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 &&
         d4 != 0;
}

double segment_segment_distance(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2) {
  if (segments_intersect(p1, p2, q1, q2)) return 0.0;
  return std::min({point_segment_distance(p1, q1, q2), point_segment_distance(p2, q1, q2),
                   point_segment_distance(q1, p1, p2), point_segment_distance(q2, p1, p2)});
}

bool inside_convex(Vec2 p, const std::array<Vec2, 4>& poly) {
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[(i + 1) % poly.size()];
    if ((b - a).cross(p - a) < 0.0) return false;
  }
  return true;
}

double polygon_distance(Vec2 p, const std::array<Vec2, 4>& poly) {
  if (inside_convex(p, poly)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i) {
    best = std::min(best, point_segment_distance(p, poly[i], poly[(i + 1) % poly.size()]));
  }
  return best;
}

// Ray parameter of the hit with segment [p, q], or +inf.
double ray_segment(Vec2 o, Vec2 d, Vec2 p, Vec2 q) {
  const Vec2 e = q - p;
  const double denom = d.cross(e);
  if (std::abs(denom) < 1e-15) return std::numeric_limits<double>::infinity();
  const Vec2 op = p - o;
  const double t = op.cross(e) / denom;
  const double s = op.cross(d) / denom;
  if (t < 0.0 || s < 0.0 || s > 1.0) return std::numeric_limits<double>::infinity();
  return t;
}

}  // namespace

Obstacle Obstacle::rectangle(Vec2 center, Vec2 half_extents) {
  Obstacle o;
  o.kind = ObstacleKind::Rectangle;
  o.center = center;
  o.half_extents = half_extents;
  o.validate();
  return o;
}

Obstacle Obstacle::bar(Vec2 a, Vec2 b, double thickness) {
  Obstacle o;
  o.kind = ObstacleKind::Bar;
  o.a = a;
  o.b = b;
  o.thickness = thickness;
  o.validate();
  return o;
}

std::array<Vec2, 4> Obstacle::polygon() const {
  if (kind == ObstacleKind::Rectangle) {
    const Vec2 h = half_extents;
    return {center + Vec2{-h.x, -h.y}, center + Vec2{h.x, -h.y}, center + Vec2{h.x, h.y},
            center + Vec2{-h.x, h.y}};
  }
  const Vec2 u = (b - a) * (1.0 / distance(a, b));
  const Vec2 n = Vec2{-u.y, u.x} * (0.5 * thickness);
  return {a - n, b - n, b + n, a + n};
}

void Obstacle::validate() const {
  if (kind == ObstacleKind::Rectangle) {
    if (!(half_extents.x > 0.0 && half_extents.y > 0.0)) {
      throw ContractViolation("rectangle obstacle needs positive half extents");
    }
  } else {
    if (!(thickness > 0.0)) throw ContractViolation("bar obstacle needs positive thickness");
    if (a == b) throw ContractViolation("bar obstacle endpoints must be distinct");
  }
}

void WorldConfig::validate() const {
  if (!(x_min < x_max)) throw ContractViolation("world: x_min must be < x_max");
  if (!(y_min < y_max)) throw ContractViolation("world: y_min must be < y_max");
  if (!(col_threshold > 0.0)) throw ContractViolation("world: col_threshold must be > 0");
  if (!(altitude > 0.0)) throw ContractViolation("world: altitude must be > 0");
  if (reset_lag_step < 0.0) throw ContractViolation("world: reset_lag_step must be >= 0");
  for (const auto& o : obstacles) o.validate();
}

bool WorldConfig::contains(Vec2 p) const {
  return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
}

const char* to_string(DoneReason r) {
  switch (r) {
    case DoneReason::None: return "none";
    case DoneReason::Target: return "target";
    case DoneReason::OutOfBounds: return "out_of_bounds";
    case DoneReason::StepLimit: return "step_limit";
    case DoneReason::Collision: return "collision";
  }
  return "unknown";
}

Vec2 action_displacement(int index) {
  if (index < 0 || index >= kNumActions) {
    throw ContractViolation("action index " + std::to_string(index) + " outside [0, 7]");
  }
  const auto& a = kActionTable[static_cast<std::size_t>(index)];
  return Vec2{static_cast<double>(a[0]), static_cast<double>(a[1])} * kActionUnit;
}

double action_heading(int index) {
  const Vec2 d = action_displacement(index);
  return std::atan2(d.y, d.x);
}

DronePose step(const DronePose& pose, int action_index, const WorldConfig& world) {
  const Vec2 d = action_displacement(action_index);
  DronePose next = pose;
  next.x += d.x;
  next.y += d.y;
  next.z = world.altitude;
  next.reported_x = next.x;
  next.reported_y = next.y;
  next.reported_z = next.z;
  return next;
}

double nearest_obstacle_distance(Vec2 p, const WorldConfig& world) {
  double best = kNoObstacleDistance;
  for (const auto& o : world.obstacles) best = std::min(best, polygon_distance(p, o.polygon()));
  return best;
}

double nearest_obstacle_distance(const DronePose& pose, const WorldConfig& world) {
  return nearest_obstacle_distance(pose.xy(), world);
}

double segment_obstacle_distance(Vec2 a, Vec2 b, const WorldConfig& world) {
  double best = kNoObstacleDistance;
  for (const auto& o : world.obstacles) {
    const auto poly = o.polygon();
    if (inside_convex(a, poly) || inside_convex(b, poly)) return 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      best = std::min(best, segment_segment_distance(a, b, poly[i], poly[(i + 1) % poly.size()]));
    }
  }
  return best;
}

double ray_distance(Vec2 origin, Vec2 direction, double max_range, const WorldConfig& world) {
  double best = max_range;
  // Exit distance from the bounds box.
  const auto axis_exit = [](double o, double d, double lo, double hi) {
    if (d > 0.0) return (hi - o) / d;
    if (d < 0.0) return (lo - o) / d;
    return std::numeric_limits<double>::infinity();
  };
  best = std::min(best, axis_exit(origin.x, direction.x, world.x_min, world.x_max));
  best = std::min(best, axis_exit(origin.y, direction.y, world.y_min, world.y_max));
  for (const auto& o : world.obstacles) {
    const auto poly = o.polygon();
    for (std::size_t i = 0; i < poly.size(); ++i) {
      best = std::min(best, ray_segment(origin, direction, poly[i], poly[(i + 1) % poly.size()]));
    }
  }
  return best;
}

}  // namespace uavnav::sim
