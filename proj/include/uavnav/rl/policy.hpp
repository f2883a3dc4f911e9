#pragma once

#include <cstdint>
#include <random>

#include "uavnav/lidar/lidar.hpp"
#include "uavnav/nn/dueling_net.hpp"

namespace uavnav::rl {

/// Linear per-step decay: eps(t) = max(eps_min, eps_max - decay * t).
struct EpsilonSchedule {
  double eps_max = 1.0;
  double eps_min = 0.01;
  double decay = 1e-4;
  std::uint64_t t = 0;

  double epsilon() const;
  double epsilon_at(std::uint64_t step) const;
  void validate() const;
};

/// Fixed affine scaling applied to the state before it reaches the
/// network. Identity by default.
struct InputScaling {
  double position = 1.0;
  double distance = 1.0;

  Eigen::VectorXd apply(const lidar::AgentState& s) const;
  bool operator==(const InputScaling&) const = default;
};

Eigen::VectorXd q_values(const nn::DuelingNet& net, const lidar::AgentState& s, const InputScaling& scaling = {});
int greedy_action(const nn::DuelingNet& net, const lidar::AgentState& s, const InputScaling& scaling = {});

/// Epsilon-greedy choice; advances sched.t by one. One uniform draw
/// decides exploration, a second picks the random action.
int select_action(const nn::DuelingNet& net, const lidar::AgentState& s, EpsilonSchedule& sched,
                  std::mt19937_64& rng, const InputScaling& scaling = {});

}  // namespace uavnav::rl
