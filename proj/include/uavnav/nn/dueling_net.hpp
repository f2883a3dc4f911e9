#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "uavnav/common.hpp"

namespace uavnav::nn {

enum class Activation : std::uint8_t { Identity = 0, Relu = 1 };

struct DenseLayer {
  Eigen::MatrixXd weight;  // out x in
  Eigen::VectorXd bias;    // out
  Activation activation = Activation::Relu;

  int in() const { return static_cast<int>(weight.cols()); }
  int out() const { return static_cast<int>(weight.rows()); }
};

/// Hidden sizes per section. The last layer of each head is appended
/// automatically (1 output for the value head, num_actions for the
/// advantage head) with identity activation.
struct Topology {
  int input_dim = 11;
  std::vector<int> trunk{64, 64};
  std::vector<int> value_hidden{32};
  std::vector<int> advantage_hidden{32};
  int num_actions = 8;
};

/// Per-parameter gradients, laid out like DuelingNet::layers().
struct Gradients {
  std::vector<Eigen::MatrixXd> weight;
  std::vector<Eigen::VectorXd> bias;

  bool all_finite() const;
  double squared_norm() const;
};

/// Activations recorded by DuelingNet::record for one batch.
struct Tape {
  // inputs[k] is the input to layer k; pre[k] its pre-activation.
  std::vector<Eigen::MatrixXd> inputs;
  std::vector<Eigen::MatrixXd> pre;
  Eigen::RowVectorXd value;
  Eigen::MatrixXd advantage;
  Eigen::MatrixXd q;

  bool recorded() const { return q.size() > 0; }
};

/// Upstream gradients at the two head outputs produced by the mean-centred
/// combine q = V + A - mean(A).
struct HeadGradients {
  Eigen::RowVectorXd value;
  Eigen::MatrixXd advantage;
};

HeadGradients combine_backward(const Eigen::MatrixXd& dq);

/// Dense trunk feeding a value head V(s) and an advantage head A(s, .),
/// combined as Q(s, a) = V(s) + A(s, a) - mean_a' A(s, a'). Column-major
/// batches: states are input_dim x B, Q-values num_actions x B.
class DuelingNet {
 public:
  DuelingNet() = default;
  /// Uniform fan-in initialisation, U(-1/sqrt(in), 1/sqrt(in)).
  DuelingNet(const Topology& topology, std::uint64_t seed);
  /// Assembles a net from explicit layers. Throws ContractViolation on
  /// inconsistent shapes.
  DuelingNet(std::vector<DenseLayer> trunk, std::vector<DenseLayer> value_head,
             std::vector<DenseLayer> advantage_head);

  int input_dim() const;
  int num_actions() const;
  std::size_t trunk_size() const { return n_trunk_; }
  std::size_t value_size() const { return n_value_; }
  std::size_t advantage_size() const { return n_advantage_; }

  /// Trunk layers first, then value head, then advantage head.
  std::span<const DenseLayer> layers() const { return layers_; }
  std::span<DenseLayer> layers() { return layers_; }
  std::size_t parameter_count() const;

  Eigen::VectorXd forward(std::span<const double> state) const;
  Eigen::MatrixXd forward_batch(const Eigen::MatrixXd& states) const;
  Tape record(const Eigen::MatrixXd& states) const;

  /// Gradients of sum(dq .* Q) for the batch on `tape`. Throws
  /// ContractViolation when the tape is empty or shapes disagree.
  Gradients backward(const Tape& tape, const Eigen::MatrixXd& dq) const;

  Gradients zero_gradients() const;

  bool operator==(const DuelingNet& other) const;

 private:
  void check_shapes() const;

  std::vector<DenseLayer> layers_;
  std::size_t n_trunk_ = 0;
  std::size_t n_value_ = 0;
  std::size_t n_advantage_ = 0;
};

/// Index of the largest entry; lowest index wins ties.
int argmax(const Eigen::VectorXd& v);

}  // namespace uavnav::nn
