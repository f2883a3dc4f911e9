#include "uavnav/rl/reward.hpp"

#include <algorithm>
#include <cmath>

namespace uavnav::rl {

void EpisodeConfig::validate() const {
  if (n_eps <= 0) throw ConfigError("n_eps: must be > 0");
  if (n_step <= 0) throw ConfigError("n_step: must be > 0");
  if (batch_size == 0) throw ConfigError("batch_size: must be > 0");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ConfigError("gamma: must be in (0, 1]");
  if (f_u <= 0) throw ConfigError("f_u: must be > 0");
  if (!(limit_x > 0.0)) throw ConfigError("limit_x: must be > 0");
  if (!(limit_y > 0.0)) throw ConfigError("limit_y: must be > 0");
  if (!(target_radius > 0.0)) throw ConfigError("target_radius: must be > 0");
  if (!(target_radius < std::min(limit_x, limit_y))) {
    throw ConfigError("target_radius: must be smaller than min(limit_x, limit_y)");
  }
  if (!(col_threshold > 0.0)) throw ConfigError("col_threshold: must be > 0");
  if (!(target_range > 0.0)) throw ConfigError("target_range: must be > 0");
  if (!(target_exclusion >= 0.0 && target_exclusion < target_range)) {
    throw ConfigError("target_exclusion: must be in [0, target_range)");
  }
  if (!(z_t > 0.0)) throw ConfigError("z_t: must be > 0");
  if (memory_size == 0) throw ConfigError("memory_size: must be > 0");
  if (!(eps_min >= 0.0 && eps_min <= eps_max && eps_max <= 1.0)) {
    throw ConfigError("eps_min/eps_max: need 0 <= eps_min <= eps_max <= 1");
  }
  if (!(eps_decay >= 0.0)) throw ConfigError("eps_decay: must be >= 0");
}

double compute_reward(double d_current, double d_last, int step_count, bool collision, const EpisodeConfig& cfg) {
  double r_t = 0.0;
  if (d_current <= cfg.target_radius) {
    r_t = kTargetReward;
  } else if (collision) {
    r_t = kCollisionReward;
  } else if (step_count >= cfg.n_step) {
    r_t = kStepLimitReward;
  } else if (d_current > d_last) {
    r_t = kMovingAwayReward;
  }
  return r_t - d_current * d_current / kDistanceScale;
}

DoneCheck check_done(const lidar::SectorDistances& dists, const sim::DronePose& pose, double d_current,
                     int counter, const EpisodeConfig& cfg) {
  if (d_current <= cfg.target_radius) return {true, sim::DoneReason::Target};
  for (double d : dists.d) {
    if (d <= cfg.col_threshold) return {true, sim::DoneReason::Collision};
  }
  if (std::abs(pose.x) > std::abs(cfg.limit_x) || std::abs(pose.y) > std::abs(cfg.limit_y)) {
    return {true, sim::DoneReason::OutOfBounds};
  }
  if (counter >= cfg.n_step) return {true, sim::DoneReason::StepLimit};
  return {};
}

}  // namespace uavnav::rl
