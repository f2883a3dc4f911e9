#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uavnav/common.hpp"

namespace uavnav::sim {

inline constexpr int kNumActions = 8;
/// Metres moved per unit of an action vector.
inline constexpr double kActionUnit = 1.0;
/// Returned by distance queries when the world has no obstacles.
inline constexpr double kNoObstacleDistance = 1.0e6;
inline constexpr double kDefaultAltitude = 4.4;

enum class ObstacleKind { Rectangle, Bar };

/// Static geometry. Rectangles are axis-aligned (center + half extents);
/// bars are thick segments, modelled as the oriented rectangle swept by the
/// segment with the given thickness.
struct Obstacle {
  ObstacleKind kind = ObstacleKind::Rectangle;
  Vec2 center;
  Vec2 half_extents;
  Vec2 a;
  Vec2 b;
  double thickness = 0.0;

  static Obstacle rectangle(Vec2 center, Vec2 half_extents);
  static Obstacle bar(Vec2 a, Vec2 b, double thickness);

  /// Corners in counter-clockwise order.
  std::array<Vec2, 4> polygon() const;
  void validate() const;
  bool operator==(const Obstacle&) const = default;
};

struct WorldConfig {
  double x_min = -20.0;
  double x_max = 20.0;
  double y_min = -20.0;
  double y_max = 20.0;
  double altitude = kDefaultAltitude;
  std::vector<Obstacle> obstacles;
  double col_threshold = 1.0;
  bool reset_lag_enabled = true;
  double reset_lag_step = 1.0;
  std::uint64_t rng_seed = 0;
  std::string template_name = "empty";
  Vec2 start{0.0, 0.0};
  Vec2 target{10.0, 0.0};

  void validate() const;
  bool contains(Vec2 p) const;
  bool operator==(const WorldConfig&) const = default;
};

struct DronePose {
  double x = 0.0;
  double y = 0.0;
  double z = kDefaultAltitude;
  double reported_x = 0.0;
  double reported_y = 0.0;
  double reported_z = kDefaultAltitude;

  static DronePose at(double x, double y, double z = kDefaultAltitude) {
    return {x, y, z, x, y, z};
  }
  Vec2 xy() const { return {x, y}; }
  Vec2 reported_xy() const { return {reported_x, reported_y}; }
  bool operator==(const DronePose&) const = default;
};

enum class DoneReason { None, Target, OutOfBounds, StepLimit, Collision };

const char* to_string(DoneReason r);

struct EpisodeStatus {
  int step_counter = 0;
  bool done = false;
  DoneReason done_reason = DoneReason::None;
};

/// Planar displacement of action `index` in metres. Order follows the
/// action table [1,-1], [1,0], [1,1], [0,1], [-1,1], [-1,0], [-1,-1], [0,-1].
Vec2 action_displacement(int index);

/// Heading (radians, CCW from +x) of action `index`.
double action_heading(int index);

/// Applies one action. No clamping: leaving the world is detected by the
/// episode termination check, not prevented here.
DronePose step(const DronePose& pose, int action_index, const WorldConfig& world);

/// Euclidean distance from `p` to the closest obstacle boundary, 0 inside an
/// obstacle, kNoObstacleDistance when there are no obstacles. World bounds
/// are not obstacles.
double nearest_obstacle_distance(Vec2 p, const WorldConfig& world);
double nearest_obstacle_distance(const DronePose& pose, const WorldConfig& world);

/// Minimum distance between segment [a, b] and any obstacle.
double segment_obstacle_distance(Vec2 a, Vec2 b, const WorldConfig& world);

/// Distance along the ray from `origin` with unit `direction` to the first
/// obstacle edge or world boundary, capped at `max_range`.
double ray_distance(Vec2 origin, Vec2 direction, double max_range, const WorldConfig& world);

}  // namespace uavnav::sim
