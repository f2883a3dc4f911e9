#pragma once

#include <span>

#include "uavnav/nn/dueling_net.hpp"
#include "uavnav/nn/optimizer.hpp"
#include "uavnav/rl/policy.hpp"
#include "uavnav/rl/replay_buffer.hpp"

namespace uavnav::rl {

struct LearnerConfig {
  double gamma = 0.99;
  bool terminal_mask = true;
  /// Multiplies rewards before they enter the regression target.
  double reward_scale = 1.0;
  InputScaling scaling;
};

struct TrainStats {
  double loss = 0.0;
  double mean_q = 0.0;
};

/// Double-DQN regression targets for a batch: the policy net picks
/// a* = argmax Q_policy(s'), the target net scores it.
/// y = r + gamma * Q_target(s', a*) (bootstrap zeroed for done when
/// terminal_mask is set).
Eigen::VectorXd ddqn_targets(const nn::DuelingNet& policy, const nn::DuelingNet& target,
                             std::span<const Transition> batch, const LearnerConfig& cfg);

/// Mean-squared error between the targets and Q_policy(s, a).
double ddqn_loss(const nn::DuelingNet& policy, const nn::DuelingNet& target, std::span<const Transition> batch,
                 const LearnerConfig& cfg);

/// One optimiser step on the MSE loss. Throws ContractViolation on an empty
/// batch and nn::NumericalError when the loss or a gradient is non-finite;
/// in that case neither the net nor the optimiser state is modified.
TrainStats train_step(nn::DuelingNet& policy, const nn::DuelingNet& target, nn::OptimizerState& opt,
                      std::span<const Transition> batch, const LearnerConfig& cfg);

/// Copies policy into target when step % f_u == 0. Returns true on copy.
bool sync_target(const nn::DuelingNet& policy, nn::DuelingNet& target, std::uint64_t step, int f_u);

}  // namespace uavnav::rl
