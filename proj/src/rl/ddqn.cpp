#include "uavnav/rl/ddqn.hpp"

#include <cmath>
#include <sstream>

namespace uavnav::rl {

namespace {

Eigen::MatrixXd stack(std::span<const Transition> batch, bool next, const InputScaling& scaling) {
  Eigen::MatrixXd m(lidar::kStateDim, static_cast<Eigen::Index>(batch.size()));
  for (std::size_t b = 0; b < batch.size(); ++b) {
    m.col(static_cast<Eigen::Index>(b)) = scaling.apply(next ? batch[b].next_state : batch[b].state);
  }
  return m;
}

int column_argmax(const Eigen::MatrixXd& q, Eigen::Index col) {
  int best = 0;
  for (Eigen::Index a = 1; a < q.rows(); ++a)
    if (q(a, col) > q(best, col)) best = static_cast<int>(a);
  return best;
}

void check_batch(std::span<const Transition> batch, const nn::DuelingNet& policy) {
  if (batch.empty()) throw ContractViolation("train_step: empty batch");
  for (const auto& t : batch) {
    if (t.action < 0 || t.action >= policy.num_actions()) {
      throw ContractViolation("train_step: action " + std::to_string(t.action) + " outside the net's range");
    }
  }
}

}  // namespace

Eigen::VectorXd ddqn_targets(const nn::DuelingNet& policy, const nn::DuelingNet& target,
                             std::span<const Transition> batch, const LearnerConfig& cfg) {
  check_batch(batch, policy);
  const Eigen::MatrixXd next = stack(batch, true, cfg.scaling);
  const Eigen::MatrixXd q_eval = policy.forward_batch(next);
  const Eigen::MatrixXd q_tgt = target.forward_batch(next);
  Eigen::VectorXd y(static_cast<Eigen::Index>(batch.size()));
  for (std::size_t b = 0; b < batch.size(); ++b) {
    const auto col = static_cast<Eigen::Index>(b);
    double q_next = q_tgt(column_argmax(q_eval, col), col);
    if (cfg.terminal_mask && batch[b].done) q_next = 0.0;
    y(col) = cfg.reward_scale * batch[b].reward + cfg.gamma * q_next;
  }
  return y;
}

double ddqn_loss(const nn::DuelingNet& policy, const nn::DuelingNet& target, std::span<const Transition> batch,
                 const LearnerConfig& cfg) {
  const Eigen::VectorXd y = ddqn_targets(policy, target, batch, cfg);
  const Eigen::MatrixXd q = policy.forward_batch(stack(batch, false, cfg.scaling));
  double sum = 0.0;
  for (std::size_t b = 0; b < batch.size(); ++b) {
    const auto col = static_cast<Eigen::Index>(b);
    const double e = q(batch[b].action, col) - y(col);
    sum += e * e;
  }
  return sum / static_cast<double>(batch.size());
}

TrainStats train_step(nn::DuelingNet& policy, const nn::DuelingNet& target, nn::OptimizerState& opt,
                      std::span<const Transition> batch, const LearnerConfig& cfg) {
  const Eigen::VectorXd y = ddqn_targets(policy, target, batch, cfg);
  const nn::Tape tape = policy.record(stack(batch, false, cfg.scaling));
  const double n = static_cast<double>(batch.size());
  Eigen::MatrixXd dq = Eigen::MatrixXd::Zero(tape.q.rows(), tape.q.cols());
  TrainStats stats;
  for (std::size_t b = 0; b < batch.size(); ++b) {
    const auto col = static_cast<Eigen::Index>(b);
    const double q = tape.q(batch[b].action, col);
    const double e = q - y(col);
    stats.loss += e * e / n;
    stats.mean_q += q / n;
    dq(batch[b].action, col) = 2.0 * e / n;
  }
  if (!std::isfinite(stats.loss)) {
    std::ostringstream msg;
    msg << "train_step: non-finite loss " << stats.loss << " at optimizer step " << opt.step;
    throw nn::NumericalError(msg.str());
  }
  nn::optimize_step(policy, policy.backward(tape, dq), opt);
  return stats;
}

bool sync_target(const nn::DuelingNet& policy, nn::DuelingNet& target, std::uint64_t step, int f_u) {
  if (f_u <= 0) throw ContractViolation("sync_target: f_u must be > 0");
  if (step % static_cast<std::uint64_t>(f_u) != 0) return false;
  target = policy;
  return true;
}

}  // namespace uavnav::rl
