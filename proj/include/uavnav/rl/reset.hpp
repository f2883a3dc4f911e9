#pragma once

#include <optional>
#include <vector>

#include "uavnav/sim/drone_sim.hpp"

namespace uavnav::rl {

struct ResetConfig {
  double a_thr = 3.0;
  double b_thr = 6.0;
  double offset_a = 2.0;
  double offset_b = 4.0;
  double soft_timeout = 20.0;
  double hard_timeout = 60.0;
  /// Enables the soft timeout. Nothing in the procedure sets it.
  bool stop_flag = false;
  /// Staged coordinates keep the sign of the pose they were computed from.
  /// When false, |x| - offset is used verbatim, which mirrors negative
  /// coordinates to the positive side.
  bool sign_preserving = true;
  /// Distance from the reset point that counts as arrived.
  double arrive_radius = 1.0;
  /// The closing move to the reset point stops within this radius or after
  /// return_timeout seconds.
  double return_tolerance = 0.05;
  double return_timeout = 30.0;

  /// Throws ConfigError on violated invariants.
  void validate() const;
};

/// Source of reported poses during a reset. DroneSim is adapted by
/// SimPlant; tests can substitute scripted streams.
class ResetPlant {
 public:
  virtual ~ResetPlant() = default;
  /// Commands the vehicle to the reset point with zero velocity.
  virtual void command_reset(Vec2 home) = 0;
  /// Advances one tick, flying toward `setpoint` when given.
  virtual sim::DronePose poll(std::optional<Vec2> setpoint) = 0;
  virtual sim::DronePose current() const = 0;
  virtual double now() const = 0;
  virtual double altitude() const = 0;
};

class SimPlant final : public ResetPlant {
 public:
  explicit SimPlant(sim::DroneSim& sim) : sim_(sim) {}
  void command_reset(Vec2 home) override { sim_.begin_reset(home); }
  sim::DronePose poll(std::optional<Vec2> setpoint) override { return sim_.poll_reported_pose(setpoint); }
  sim::DronePose current() const override { return sim_.pose(); }
  double now() const override { return sim_.clock(); }
  double altitude() const override { return sim_.world().altitude; }

 private:
  sim::DroneSim& sim_;
};

enum class ResetExit { Arrived, SoftTimeout, HardTimeout };
const char* to_string(ResetExit e);

struct ResetReport {
  ResetExit exit = ResetExit::Arrived;
  /// Seconds spent in the waiting loop and in the closing move.
  double loop_seconds = 0.0;
  double return_seconds = 0.0;
  int polls = 0;
  /// Ticks spent steering toward a staging point.
  int staging_moves = 0;
  std::vector<Vec2> staging_points;
  /// Filled by the DroneSim overloads.
  int contact_events = 0;
  double min_clearance = 0.0;
  Vec2 final_position;
};

/// Staged reset: command the reset, then wait for the reported pose to come
/// within arrive_radius of the reset point. The first time the reported
/// pose departs from the pre-reset pose, each coordinate of magnitude at
/// least a_thr is pulled toward zero by offset_b (>= b_thr) or offset_a and
/// the vehicle is steered to that staging point while waiting; smaller
/// coordinates follow the reported pose. The loop ends on arrival or
/// timeout, after which the vehicle flies to the reset point.
ResetReport reset_sequence(ResetPlant& plant, const ResetConfig& cfg, Vec2 home = {0.0, 0.0});
ResetReport reset_sequence(sim::DroneSim& sim, const ResetConfig& cfg, Vec2 home = {0.0, 0.0});

/// Baseline without staging: steer straight to the reset point while the
/// reported pose catches up.
ResetReport direct_reset(sim::DroneSim& sim, const ResetConfig& cfg, Vec2 home = {0.0, 0.0});

}  // namespace uavnav::rl
