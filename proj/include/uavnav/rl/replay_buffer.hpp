#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "uavnav/lidar/lidar.hpp"

namespace uavnav::rl {

struct Transition {
  lidar::AgentState state;
  int action = 0;
  double reward = 0.0;
  lidar::AgentState next_state;
  bool done = false;

  /// Throws ContractViolation when the action is outside 0..7.
  void validate() const;
  bool operator==(const Transition&) const = default;
};

inline constexpr std::size_t kDefaultReplayCapacity = 1'000'000;

/// Fixed-capacity FIFO. Storage grows on demand up to the capacity, then
/// the oldest entry is overwritten.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity = kDefaultReplayCapacity);

  void push(const Transition& t);
  std::size_t size() const { return data_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool empty() const { return data_.empty(); }
  /// Total number of pushes ever made.
  std::size_t pushed() const { return pushed_; }

  /// i = 0 is the oldest stored transition.
  const Transition& at(std::size_t i) const;

  /// Uniform indices (oldest-first numbering), with replacement. Throws
  /// ContractViolation when the buffer is empty.
  std::vector<std::size_t> sample_indices(std::size_t n, std::mt19937_64& rng) const;
  std::vector<Transition> sample(std::size_t n, std::mt19937_64& rng) const;

 private:
  std::size_t capacity_;
  std::vector<Transition> data_;
  std::size_t head_ = 0;  // slot of the oldest entry once full
  std::size_t pushed_ = 0;
};

}  // namespace uavnav::rl
