#include "uavnav/nn/dueling_net.hpp"

#include <cmath>
#include <random>
#include <string>

namespace uavnav::nn {

namespace {

DenseLayer init_layer(int in, int out, Activation act, std::mt19937_64& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(in));
  std::uniform_real_distribution<double> u(-bound, bound);
  DenseLayer layer;
  layer.weight.resize(out, in);
  layer.bias.resize(out);
  layer.activation = act;
  // Column-major fill keeps the draw order tied to the storage layout.
  for (int c = 0; c < in; ++c)
    for (int r = 0; r < out; ++r) layer.weight(r, c) = u(rng);
  for (int r = 0; r < out; ++r) layer.bias(r) = u(rng);
  return layer;
}

Eigen::MatrixXd apply(const DenseLayer& layer, const Eigen::MatrixXd& x, Eigen::MatrixXd* pre_out) {
  Eigen::MatrixXd pre = layer.weight * x;
  pre.colwise() += layer.bias;
  Eigen::MatrixXd post = layer.activation == Activation::Relu ? pre.cwiseMax(0.0).eval() : pre;
  if (pre_out) *pre_out = std::move(pre);
  return post;
}

}  // namespace

DuelingNet::DuelingNet(const Topology& t, std::uint64_t seed) {
  if (t.input_dim <= 0 || t.num_actions <= 0) {
    throw ContractViolation("DuelingNet: input_dim and num_actions must be positive");
  }
  std::mt19937_64 rng(seed);
  int width = t.input_dim;
  for (int h : t.trunk) {
    if (h <= 0) throw ContractViolation("DuelingNet: hidden sizes must be positive");
    layers_.push_back(init_layer(width, h, Activation::Relu, rng));
    width = h;
  }
  n_trunk_ = layers_.size();
  const int trunk_out = width;
  const auto head = [&](const std::vector<int>& hidden, int out_dim) {
    int w = trunk_out;
    for (int h : hidden) {
      if (h <= 0) throw ContractViolation("DuelingNet: hidden sizes must be positive");
      layers_.push_back(init_layer(w, h, Activation::Relu, rng));
      w = h;
    }
    layers_.push_back(init_layer(w, out_dim, Activation::Identity, rng));
    return hidden.size() + 1;
  };
  n_value_ = head(t.value_hidden, 1);
  n_advantage_ = head(t.advantage_hidden, t.num_actions);
  check_shapes();
}

DuelingNet::DuelingNet(std::vector<DenseLayer> trunk, std::vector<DenseLayer> value_head,
                       std::vector<DenseLayer> advantage_head)
    : n_trunk_(trunk.size()), n_value_(value_head.size()), n_advantage_(advantage_head.size()) {
  for (auto* section : {&trunk, &value_head, &advantage_head})
    for (auto& l : *section) layers_.push_back(std::move(l));
  check_shapes();
}

void DuelingNet::check_shapes() const {
  if (n_value_ == 0 || n_advantage_ == 0) throw ContractViolation("DuelingNet: both heads need a layer");
  if (n_trunk_ + n_value_ + n_advantage_ != layers_.size()) {
    throw ContractViolation("DuelingNet: section sizes do not add up");
  }
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    const auto& l = layers_[k];
    if (l.in() <= 0 || l.out() <= 0 || l.bias.size() != l.out()) {
      throw ContractViolation("DuelingNet: layer " + std::to_string(k) + " has inconsistent shape");
    }
  }
  const auto chain = [&](std::size_t begin, std::size_t end, int in) {
    for (std::size_t k = begin; k < end; ++k) {
      if (layers_[k].in() != in) {
        throw ContractViolation("DuelingNet: layer " + std::to_string(k) + " expects " +
                                std::to_string(layers_[k].in()) + " inputs, got " + std::to_string(in));
      }
      in = layers_[k].out();
    }
    return in;
  };
  const int trunk_out = chain(0, n_trunk_, layers_[0].in());
  if (chain(n_trunk_, n_trunk_ + n_value_, trunk_out) != 1) {
    throw ContractViolation("DuelingNet: value head must end in a single output");
  }
  chain(n_trunk_ + n_value_, layers_.size(), trunk_out);
}

int DuelingNet::input_dim() const { return layers_.empty() ? 0 : layers_.front().in(); }
int DuelingNet::num_actions() const { return layers_.empty() ? 0 : layers_.back().out(); }

std::size_t DuelingNet::parameter_count() const {
  std::size_t n = 0;
  for (const auto& l : layers_) n += static_cast<std::size_t>(l.weight.size() + l.bias.size());
  return n;
}

Eigen::VectorXd DuelingNet::forward(std::span<const double> state) const {
  if (static_cast<int>(state.size()) != input_dim()) {
    throw ContractViolation("DuelingNet::forward: expected " + std::to_string(input_dim()) +
                            " inputs, got " + std::to_string(state.size()));
  }
  const Eigen::Map<const Eigen::MatrixXd> x(state.data(), input_dim(), 1);
  return forward_batch(x).col(0);
}

Eigen::MatrixXd DuelingNet::forward_batch(const Eigen::MatrixXd& states) const {
  return record(states).q;
}

Tape DuelingNet::record(const Eigen::MatrixXd& states) const {
  if (layers_.empty()) throw ContractViolation("DuelingNet: empty network");
  if (states.rows() != input_dim() || states.cols() == 0) {
    throw ContractViolation("DuelingNet: expected " + std::to_string(input_dim()) + " x B states, got " +
                            std::to_string(states.rows()) + " x " + std::to_string(states.cols()));
  }
  Tape tape;
  tape.inputs.resize(layers_.size());
  tape.pre.resize(layers_.size());
  Eigen::MatrixXd h = states;
  for (std::size_t k = 0; k < n_trunk_; ++k) {
    tape.inputs[k] = h;
    h = apply(layers_[k], h, &tape.pre[k]);
  }
  const auto run_head = [&](std::size_t begin, std::size_t end) {
    Eigen::MatrixXd x = h;
    for (std::size_t k = begin; k < end; ++k) {
      tape.inputs[k] = x;
      x = apply(layers_[k], x, &tape.pre[k]);
    }
    return x;
  };
  tape.value = run_head(n_trunk_, n_trunk_ + n_value_).row(0);
  tape.advantage = run_head(n_trunk_ + n_value_, layers_.size());
  const Eigen::RowVectorXd mean_a = tape.advantage.colwise().mean();
  tape.q = tape.advantage;
  tape.q.rowwise() += tape.value - mean_a;
  return tape;
}

HeadGradients combine_backward(const Eigen::MatrixXd& dq) {
  HeadGradients g;
  g.value = dq.colwise().sum();
  g.advantage = dq;
  g.advantage.rowwise() -= dq.colwise().mean();
  return g;
}

Gradients DuelingNet::zero_gradients() const {
  Gradients g;
  for (const auto& l : layers_) {
    g.weight.push_back(Eigen::MatrixXd::Zero(l.weight.rows(), l.weight.cols()));
    g.bias.push_back(Eigen::VectorXd::Zero(l.bias.size()));
  }
  return g;
}

Gradients DuelingNet::backward(const Tape& tape, const Eigen::MatrixXd& dq) const {
  if (!tape.recorded()) throw ContractViolation("DuelingNet::backward: no recorded forward pass");
  if (tape.inputs.size() != layers_.size() || dq.rows() != tape.q.rows() || dq.cols() != tape.q.cols()) {
    throw ContractViolation("DuelingNet::backward: gradient shape does not match the tape");
  }
  Gradients g = zero_gradients();
  // Returns the gradient w.r.t. the input of layer `begin`.
  const auto back_section = [&](std::size_t begin, std::size_t end, Eigen::MatrixXd upstream) {
    for (std::size_t k = end; k-- > begin;) {
      const auto& l = layers_[k];
      if (l.activation == Activation::Relu) {
        upstream = upstream.cwiseProduct((tape.pre[k].array() > 0.0).cast<double>().matrix());
      }
      g.weight[k] = upstream * tape.inputs[k].transpose();
      g.bias[k] = upstream.rowwise().sum();
      upstream = l.weight.transpose() * upstream;
    }
    return upstream;
  };
  const HeadGradients heads = combine_backward(dq);
  Eigen::MatrixXd d_trunk = back_section(n_trunk_, n_trunk_ + n_value_, heads.value);
  d_trunk += back_section(n_trunk_ + n_value_, layers_.size(), heads.advantage);
  back_section(0, n_trunk_, std::move(d_trunk));
  return g;
}

bool DuelingNet::operator==(const DuelingNet& o) const {
  if (layers_.size() != o.layers_.size() || n_trunk_ != o.n_trunk_ || n_value_ != o.n_value_) return false;
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    const auto& a = layers_[k];
    const auto& b = o.layers_[k];
    if (a.activation != b.activation || a.weight.rows() != b.weight.rows() || a.weight.cols() != b.weight.cols() ||
        a.weight != b.weight || a.bias != b.bias) {
      return false;
    }
  }
  return true;
}

bool Gradients::all_finite() const {
  for (const auto& w : weight)
    if (!w.allFinite()) return false;
  for (const auto& b : bias)
    if (!b.allFinite()) return false;
  return true;
}

double Gradients::squared_norm() const {
  double s = 0.0;
  for (const auto& w : weight) s += w.squaredNorm();
  for (const auto& b : bias) s += b.squaredNorm();
  return s;
}

int argmax(const Eigen::VectorXd& v) {
  if (v.size() == 0) throw ContractViolation("argmax: empty vector");
  int best = 0;
  for (int i = 1; i < v.size(); ++i)
    if (v(i) > v(best)) best = i;
  return best;
}

}  // namespace uavnav::nn
