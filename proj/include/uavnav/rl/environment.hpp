#pragma once

#include <cstdint>
#include <random>

#include "uavnav/lidar/lidar.hpp"
#include "uavnav/rl/reward.hpp"
#include "uavnav/sim/drone_sim.hpp"

namespace uavnav::rl {

/// Sensing side of the environment: noisy scans, synthetic IMU readings and
/// the noise-elimination filter.
struct SensingConfig {
  lidar::NoiseModel noise{true, 0.02, 1.0, 0.15};
  lidar::FilterParams filter;
  double max_range = lidar::kDefaultMaxRange;
  /// Scans taken per step until the filter accepts one.
  int max_sense_polls = 3;
  /// |N(0, sigma)| linear speed and N(0, sigma) roll/pitch per scan.
  double velocity_sigma = 0.15;
  double attitude_sigma = 0.04;
  /// When set, each scan's noise disturbance is noise.disturbance times
  /// |roll| + |pitch| (radians) of the same reading.
  bool attitude_coupled_noise = true;
  /// Body radius used for the geometric contact check along each move.
  double body_radius = 0.3;
};

struct StepResult {
  lidar::AgentState state;
  double reward = 0.0;
  bool done = false;
  sim::DoneReason reason = sim::DoneReason::None;
  double d_current = 0.0;
  bool collision = false;
};

/// One navigation episode in a fixed world: sense -> filter -> act ->
/// reward -> done. Targets are at (world.target, z_t).
class NavigationEnv {
 public:
  NavigationEnv(sim::WorldConfig world, EpisodeConfig episode, SensingConfig sensing, std::uint64_t seed);

  /// Places the drone at the world start, clears the filter and returns
  /// the first state. Also reports whether the start already terminates.
  lidar::AgentState reset();
  StepResult step(int action);

  const StepResult& initial() const { return initial_; }
  int step_count() const { return steps_; }
  Vec3 target() const { return target_; }
  double target_distance() const;
  const sim::DroneSim& drone() const { return sim_; }
  sim::DroneSim& drone() { return sim_; }
  const lidar::SectorDistances& filtered() const { return filtered_; }

 private:
  lidar::SectorDistances sense();

  EpisodeConfig episode_;
  SensingConfig sensing_;
  sim::DroneSim sim_;
  Vec3 target_;
  std::mt19937_64 rng_;
  lidar::FilterState filter_;
  lidar::SectorDistances filtered_;
  StepResult initial_;
  double d_last_ = 0.0;
  int steps_ = 0;
};

}  // namespace uavnav::rl
