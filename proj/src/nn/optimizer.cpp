#include "uavnav/nn/optimizer.hpp"

#include <cmath>
#include <sstream>

namespace uavnav::nn {

OptimizerState OptimizerState::for_net(const DuelingNet& net, AdamParams params) {
  OptimizerState s;
  s.params = params;
  for (const auto& l : net.layers()) {
    s.m_weight.push_back(Eigen::MatrixXd::Zero(l.weight.rows(), l.weight.cols()));
    s.v_weight.push_back(Eigen::MatrixXd::Zero(l.weight.rows(), l.weight.cols()));
    s.m_bias.push_back(Eigen::VectorXd::Zero(l.bias.size()));
    s.v_bias.push_back(Eigen::VectorXd::Zero(l.bias.size()));
  }
  return s;
}

bool OptimizerState::operator==(const OptimizerState& o) const {
  const auto same = [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (a[k].rows() != b[k].rows() || a[k].cols() != b[k].cols() || a[k] != b[k]) return false;
    }
    return true;
  };
  return params.lr == o.params.lr && params.beta1 == o.params.beta1 && params.beta2 == o.params.beta2 &&
         params.eps == o.params.eps && step == o.step && same(m_weight, o.m_weight) &&
         same(v_weight, o.v_weight) && same(m_bias, o.m_bias) && same(v_bias, o.v_bias);
}

namespace {

template <typename T>
void adam(T& param, const T& grad, T& m, T& v, const AdamParams& p, double c1, double c2) {
  m = p.beta1 * m + (1.0 - p.beta1) * grad;
  v = p.beta2 * v + (1.0 - p.beta2) * grad.cwiseProduct(grad);
  param.array() -= p.lr * (m.array() / c1) / ((v.array() / c2).sqrt() + p.eps);
}

}  // namespace

void optimize_step(DuelingNet& net, const Gradients& grads, OptimizerState& opt) {
  auto layers = net.layers();
  const std::size_t n = layers.size();
  if (grads.weight.size() != n || grads.bias.size() != n || opt.m_weight.size() != n) {
    throw ContractViolation("optimize_step: gradient/optimizer layout does not match the net");
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (grads.weight[k].rows() != layers[k].weight.rows() || grads.weight[k].cols() != layers[k].weight.cols() ||
        grads.bias[k].size() != layers[k].bias.size() || opt.m_weight[k].rows() != layers[k].weight.rows() ||
        opt.m_weight[k].cols() != layers[k].weight.cols()) {
      throw ContractViolation("optimize_step: shape mismatch at layer " + std::to_string(k));
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    const bool w_ok = grads.weight[k].allFinite();
    if (w_ok && grads.bias[k].allFinite()) continue;
    std::ostringstream msg;
    msg << "optimize_step: non-finite gradient in layer " << k << " (" << (w_ok ? "bias" : "weight")
        << "), step " << opt.step;
    throw NumericalError(msg.str());
  }
  ++opt.step;
  const double t = static_cast<double>(opt.step);
  const double c1 = 1.0 - std::pow(opt.params.beta1, t);
  const double c2 = 1.0 - std::pow(opt.params.beta2, t);
  for (std::size_t k = 0; k < n; ++k) {
    adam(layers[k].weight, grads.weight[k], opt.m_weight[k], opt.v_weight[k], opt.params, c1, c2);
    adam(layers[k].bias, grads.bias[k], opt.m_bias[k], opt.v_bias[k], opt.params, c1, c2);
  }
}

}  // namespace uavnav::nn
