#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "uavnav/nn/dueling_net.hpp"

namespace uavnav::nn {

struct AdamParams {
  double lr = 5e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/// Adam first/second moments, one entry per layer.
struct OptimizerState {
  AdamParams params;
  std::uint64_t step = 0;
  std::vector<Eigen::MatrixXd> m_weight, v_weight;
  std::vector<Eigen::VectorXd> m_bias, v_bias;

  static OptimizerState for_net(const DuelingNet& net, AdamParams params = {});
  bool operator==(const OptimizerState& o) const;
};

/// One Adam update of `net` in place. Throws ContractViolation when the
/// gradient shapes disagree with the net, and NumericalError when any
/// gradient is non-finite (the net and state are left untouched).
void optimize_step(DuelingNet& net, const Gradients& grads, OptimizerState& opt);

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace uavnav::nn
