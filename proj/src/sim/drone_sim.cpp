#include "uavnav/sim/drone_sim.hpp"

#include <algorithm>

namespace uavnav::sim {
namespace {

double step_toward(double from, double to, double max_step) {
  const double d = to - from;
  if (std::abs(d) <= max_step) return to;
  return from + (d > 0.0 ? max_step : -max_step);
}

}  // namespace

DroneSim::DroneSim(WorldConfig world, FlightModel model)
    : world_(std::move(world)), model_(model) {
  world_.validate();
  pose_ = DronePose::at(world_.start.x, world_.start.y, world_.altitude);
}

void DroneSim::place(Vec2 xy) {
  pose_ = DronePose::at(xy.x, xy.y, world_.altitude);
  lag_active_ = false;
}

const DronePose& DroneSim::apply_action(int action_index) {
  pose_ = step(pose_, action_index, world_);
  return pose_;
}

void DroneSim::begin_reset(Vec2 home) {
  pose_.x = home.x;
  pose_.y = home.y;
  pose_.z = world_.altitude;
  home_ = {home.x, home.y, world_.altitude};
  lag_active_ = true;
  in_contact_ = false;
  contact_events_ = 0;
  min_clearance_ = kNoObstacleDistance;
}

const DronePose& DroneSim::poll_reported_pose(std::optional<Vec2> setpoint) {
  clock_ += model_.tick_seconds;
  if (lag_active_ && !world_.reset_lag_enabled) end_lag();
  if (setpoint) {
    // The controller closes the loop on the reported pose.
    Vec2 v = (*setpoint - pose_.reported_xy()) * model_.controller_gain;
    const double speed = v.norm();
    if (speed > model_.max_speed) v = v * (model_.max_speed / speed);
    const Vec2 moved = v * model_.tick_seconds;
    pose_.x += moved.x;
    pose_.y += moved.y;
  }
  if (lag_active_) {
    advance_reported();
  } else {
    pose_.reported_x = pose_.x;
    pose_.reported_y = pose_.y;
    pose_.reported_z = pose_.z;
  }
  track_contact();
  return pose_;
}

void DroneSim::end_lag() {
  pose_.reported_x = pose_.x;
  pose_.reported_y = pose_.y;
  pose_.reported_z = pose_.z;
  lag_active_ = false;
}

void DroneSim::advance_reported() {
  // The stale estimate walks toward the reset point regardless of how the
  // vehicle actually moves; once it arrives, the true pose shows through.
  const double s = world_.reset_lag_step;
  if (model_.lag_profile == LagProfile::Simultaneous) {
    pose_.reported_x = step_toward(pose_.reported_x, home_.x, s);
    pose_.reported_y = step_toward(pose_.reported_y, home_.y, s);
    pose_.reported_z = step_toward(pose_.reported_z, home_.z, s);
  } else if (pose_.reported_x != home_.x) {
    pose_.reported_x = step_toward(pose_.reported_x, home_.x, s);
  } else if (pose_.reported_y != home_.y) {
    pose_.reported_y = step_toward(pose_.reported_y, home_.y, s);
  } else {
    pose_.reported_z = step_toward(pose_.reported_z, home_.z, s);
  }
  if (pose_.reported_x == home_.x && pose_.reported_y == home_.y && pose_.reported_z == home_.z) end_lag();
}

void DroneSim::track_contact() {
  const double clearance = nearest_obstacle_distance(pose_.xy(), world_);
  min_clearance_ = std::min(min_clearance_, clearance);
  const bool contact = clearance < model_.body_radius || !world_.contains(pose_.xy());
  if (contact && !in_contact_) ++contact_events_;
  in_contact_ = contact;
}

}  // namespace uavnav::sim
