#include "uavnav/rl/policy.hpp"

#include <algorithm>

#include "uavnav/sim/world.hpp"

namespace uavnav::rl {

double EpsilonSchedule::epsilon_at(std::uint64_t step) const {
  return std::max(eps_min, eps_max - decay * static_cast<double>(step));
}

double EpsilonSchedule::epsilon() const { return epsilon_at(t); }

void EpsilonSchedule::validate() const {
  if (!(eps_min >= 0.0 && eps_min <= eps_max && eps_max <= 1.0)) {
    throw ConfigError("epsilon: need 0 <= eps_min <= eps_max <= 1");
  }
  if (!(decay >= 0.0)) throw ConfigError("eps_decay: must be >= 0");
}

Eigen::VectorXd InputScaling::apply(const lidar::AgentState& s) const {
  Eigen::VectorXd x(lidar::kStateDim);
  for (int i = 0; i < 3; ++i) x(i) = s.v[static_cast<std::size_t>(i)] * position;
  for (int i = 3; i < lidar::kStateDim; ++i) x(i) = s.v[static_cast<std::size_t>(i)] * distance;
  return x;
}

Eigen::VectorXd q_values(const nn::DuelingNet& net, const lidar::AgentState& s, const InputScaling& scaling) {
  const Eigen::VectorXd x = scaling.apply(s);
  return net.forward(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
}

int greedy_action(const nn::DuelingNet& net, const lidar::AgentState& s, const InputScaling& scaling) {
  return nn::argmax(q_values(net, s, scaling));
}

int select_action(const nn::DuelingNet& net, const lidar::AgentState& s, EpsilonSchedule& sched,
                  std::mt19937_64& rng, const InputScaling& scaling) {
  const double eps = sched.epsilon();
  ++sched.t;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (unit(rng) < eps) {
    std::uniform_int_distribution<int> pick(0, sim::kNumActions - 1);
    return pick(rng);
  }
  return greedy_action(net, s, scaling);
}

}  // namespace uavnav::rl
