#pragma once

#include <cstddef>

#include "uavnav/lidar/lidar.hpp"
#include "uavnav/sim/world.hpp"

namespace uavnav::rl {

inline constexpr double kTargetReward = 3000.0;
inline constexpr double kCollisionReward = -2000.0;
inline constexpr double kStepLimitReward = -1000.0;
inline constexpr double kMovingAwayReward = -50.0;
/// Denominator of the distance shaping term d^2 / kDistanceScale.
inline constexpr double kDistanceScale = 100.0;

struct EpisodeConfig {
  int n_eps = 500;
  int n_step = 50;
  std::size_t batch_size = 96;
  double gamma = 0.99;
  int f_u = 1000;
  double target_radius = 3.0;
  double limit_x = 20.0;
  double limit_y = 20.0;
  double col_threshold = 1.0;
  /// Targets come from [-target_range, target_range]^2 minus a disk of
  /// radius target_exclusion around the start.
  double target_range = 12.0;
  double target_exclusion = 3.0;
  double z_t = sim::kDefaultAltitude;
  std::size_t memory_size = 1'000'000;
  double eps_max = 1.0;
  double eps_min = 0.01;
  double eps_decay = 1e-4;
  /// Zero the bootstrap term on terminal transitions.
  bool terminal_mask = true;

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

double compute_reward(double d_current, double d_last, int step_count, bool collision, const EpisodeConfig& cfg);

struct DoneCheck {
  bool done = false;
  sim::DoneReason reason = sim::DoneReason::None;
};

/// Termination predicate. Precedence when several cases hold:
/// target > collision > bounds > timeout.
DoneCheck check_done(const lidar::SectorDistances& dists, const sim::DronePose& pose, double d_current,
                     int counter, const EpisodeConfig& cfg);

}  // namespace uavnav::rl
