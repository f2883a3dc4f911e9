#pragma once

#include <optional>

#include "uavnav/sim/world.hpp"

namespace uavnav::sim {

/// How the reported pose walks back to the true pose after a reset.
enum class LagProfile {
  /// One axis at a time (x, then y, then z), as in (5,6) -> (4,6) -> (3,6).
  AxisSequential,
  /// All axes step together.
  Simultaneous,
};

/// Parameters of the emulated position controller and pose-reporting lag.
struct FlightModel {
  double tick_seconds = 0.5;
  /// Commanded speed per metre of setpoint error, as seen through the
  /// reported pose.
  double controller_gain = 0.5;
  double max_speed = 1.0;
  double body_radius = 0.3;
  LagProfile lag_profile = LagProfile::AxisSequential;
};

/// Stateful drone inside a world. Kinematic action steps are instant; the
/// reset path runs on a tick clock and reproduces a laggy pose topic: the
/// true pose jumps home immediately while the reported pose walks toward
/// home by `reset_lag_step` per tick. Setpoints given while the lag is
/// active are tracked against the stale reported pose, so the vehicle
/// drifts; the drift becomes visible once the reported pose reaches home.
class DroneSim {
 public:
  explicit DroneSim(WorldConfig world, FlightModel model = {});

  const WorldConfig& world() const { return world_; }
  const FlightModel& model() const { return model_; }
  const DronePose& pose() const { return pose_; }
  double clock() const { return clock_; }

  void place(Vec2 xy);
  const DronePose& apply_action(int action_index);

  /// Teleports the true pose to (home, altitude). With lag disabled the
  /// reported pose snaps to the true pose on the next poll.
  void begin_reset(Vec2 home = {0.0, 0.0});

  /// Advances one tick, optionally flying toward `setpoint`, and returns
  /// the pose afterwards.
  const DronePose& poll_reported_pose(std::optional<Vec2> setpoint = std::nullopt);

  bool lag_active() const { return lag_active_; }
  /// Number of times the body entered an obstacle since the last reset.
  int contact_events() const { return contact_events_; }
  double min_clearance() const { return min_clearance_; }

 private:
  void advance_reported();
  void end_lag();
  void track_contact();

  WorldConfig world_;
  FlightModel model_;
  DronePose pose_;
  Vec3 home_;
  double clock_ = 0.0;
  bool lag_active_ = false;
  bool in_contact_ = false;
  int contact_events_ = 0;
  double min_clearance_ = kNoObstacleDistance;
};

}  // namespace uavnav::sim
