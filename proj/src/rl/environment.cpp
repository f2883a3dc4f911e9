#include "uavnav/rl/environment.hpp"

#include <cmath>

namespace uavnav::rl {

namespace {

sim::FlightModel flight_model(const SensingConfig& s) {
  sim::FlightModel m;
  m.body_radius = s.body_radius;
  return m;
}

}  // namespace

NavigationEnv::NavigationEnv(sim::WorldConfig world, EpisodeConfig episode, SensingConfig sensing,
                             std::uint64_t seed)
    : episode_(episode),
      sensing_(sensing),
      sim_(std::move(world), flight_model(sensing)),
      target_{sim_.world().target.x, sim_.world().target.y, episode.z_t},
      rng_(seed) {
  if (sensing_.max_sense_polls < 1) throw ConfigError("max_sense_polls: must be >= 1");
  reset();
}

double NavigationEnv::target_distance() const {
  const auto& p = sim_.pose();
  const double dx = target_.x - p.x;
  const double dy = target_.y - p.y;
  const double dz = target_.z - p.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

lidar::SectorDistances NavigationEnv::sense() {
  std::normal_distribution<double> vel(0.0, sensing_.velocity_sigma);
  std::normal_distribution<double> att(0.0, sensing_.attitude_sigma);
  lidar::SectorDistances out = filter_.last_output;
  for (int poll = 0; poll < sensing_.max_sense_polls; ++poll) {
    lidar::MotionReading motion;
    motion.linear_velocity = std::abs(vel(rng_));
    motion.roll = att(rng_);
    motion.pitch = att(rng_);
    lidar::NoiseModel noise = sensing_.noise;
    if (sensing_.attitude_coupled_noise) noise.disturbance *= std::abs(motion.roll) + std::abs(motion.pitch);
    const std::uint64_t scan_seed = rng_();
    const lidar::RawScan scan = lidar::cast_scan(sim_.world(), sim_.pose(), noise, scan_seed, sensing_.max_range);
    const lidar::SectorDistances pooled = lidar::pool_sectors(scan, sensing_.filter.det_range);
    // A fresh scan re-arms the filter.
    filter_.detect_flag = true;
    const lidar::FilterOutput f = lidar::filter_scan(filter_, pooled, motion);
    filter_ = f.next;
    out = f.state;
    if (f.updated) break;
  }
  return out;
}

lidar::AgentState NavigationEnv::reset() {
  sim_.place(sim_.world().start);
  filter_ = lidar::FilterState::initial(sensing_.filter);
  filtered_ = sense();
  steps_ = 0;
  d_last_ = target_distance();
  const DoneCheck c = check_done(filtered_, sim_.pose(), d_last_, 0, episode_);
  initial_ = {lidar::build_state(sim_.pose(), target_, filtered_), 0.0, c.done, c.reason, d_last_, false};
  return initial_.state;
}

StepResult NavigationEnv::step(int action) {
  const Vec2 from = sim_.pose().xy();
  sim_.apply_action(action);
  const Vec2 to = sim_.pose().xy();
  const bool contact = sim::segment_obstacle_distance(from, to, sim_.world()) < sensing_.body_radius;
  // Outside the world there is nothing to scan; keep the last filtered view.
  if (sim_.world().contains(to)) filtered_ = sense();
  ++steps_;

  StepResult r;
  r.d_current = target_distance();
  DoneCheck c = check_done(filtered_, sim_.pose(), r.d_current, steps_, episode_);
  if (contact && c.reason != sim::DoneReason::Target) c = {true, sim::DoneReason::Collision};
  r.done = c.done;
  r.reason = c.reason;
  r.collision = c.reason == sim::DoneReason::Collision;
  r.reward = compute_reward(r.d_current, d_last_, steps_, r.collision, episode_);
  r.state = lidar::build_state(sim_.pose(), target_, filtered_);
  d_last_ = r.d_current;
  return r;
}

}  // namespace uavnav::rl
