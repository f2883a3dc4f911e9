#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "uavnav/nn/checkpoint.hpp"
#include "uavnav/rl/ddqn.hpp"
#include "uavnav/rl/environment.hpp"
#include "uavnav/rl/reset.hpp"
#include "uavnav/sim/scenario.hpp"

namespace uavnav::rl {

struct TrainingConfig {
  EpisodeConfig episode;
  SensingConfig sensing;
  ResetConfig reset;
  nn::Topology topology;
  nn::AdamParams adam;
  LearnerConfig learner;
  sim::FarmlandParams farmland;
  std::uint64_t master_seed = 0;
  int rolling_window = 20;
  /// Gradient steps per environment step once the buffer holds a batch.
  int updates_per_step = 1;
  bool run_resets = true;
  /// Optional sink for progress and compatibility messages.
  std::function<void(const std::string&)> log;

  /// Cross-field validation; throws ConfigError.
  void validate() const;
};

/// Episode index -> world. The default draws a seeded farmland per episode.
using WorldFactory = std::function<sim::WorldConfig(int episode)>;

WorldFactory farmland_factory(std::uint64_t master_seed, std::string_view stream, const sim::FarmlandParams& params,
                              const EpisodeConfig& episode);

struct CurveRow {
  int episode = 0;
  double score = 0.0;
  double rolling_avg = 0.0;
  double epsilon = 0.0;
  std::size_t buffer_size = 0;
  int steps = 0;
  sim::DoneReason reason = sim::DoneReason::None;
};

struct TrainingResult {
  nn::DuelingNet policy;
  nn::DuelingNet target;
  nn::OptimizerState optimizer;
  std::vector<CurveRow> curve;
  std::vector<ResetReport> resets;
  std::uint64_t env_steps = 0;
  std::uint64_t updates = 0;
  bool aborted = false;
  std::string abort_reason;
};

using EpisodeCallback = std::function<void(const CurveRow&)>;

/// Deterministic in (cfg, factory). A non-finite loss stops training and
/// returns the last good networks with aborted = true.
TrainingResult run_training(const TrainingConfig& cfg, const WorldFactory& factory,
                            const EpisodeCallback& on_episode = {});
TrainingResult run_training(const TrainingConfig& cfg, const EpisodeCallback& on_episode = {});

struct TraceRow {
  int step = 0;
  double x = 0.0;
  double y = 0.0;
  int action = -1;
  double reward = 0.0;
  sim::DoneReason reason = sim::DoneReason::None;
};

struct EpisodeTrace {
  std::uint64_t world_seed = 0;
  sim::WorldConfig world;
  std::vector<TraceRow> rows;
  sim::DoneReason reason = sim::DoneReason::None;
  int steps = 0;
  bool success = false;
};

struct EvaluationResult {
  std::vector<EpisodeTrace> episodes;
  double success_rate = 0.0;
  int successes = 0;
};

/// state -> action. `rng` is a per-episode stream for stochastic policies.
using Policy = std::function<int(const lidar::AgentState&, std::mt19937_64& rng)>;

Policy greedy_policy(const nn::DuelingNet& net, InputScaling scaling = {});
Policy random_policy();

struct EvaluationConfig {
  EpisodeConfig episode;
  SensingConfig sensing;
  sim::FarmlandParams farmland;
  std::uint64_t master_seed = 0;
  int n_episodes = 50;
  int jobs = 1;
};

/// Seeds of the evaluation worlds: derived from master_seed on a stream
/// disjoint from training.
std::vector<std::uint64_t> evaluation_seeds(std::uint64_t master_seed, int n);

/// One episode per world. Success means the episode ended at the target;
/// a start inside the target radius succeeds with zero steps.
EpisodeTrace run_episode(const sim::WorldConfig& world, const Policy& policy, const EpisodeConfig& episode,
                         const SensingConfig& sensing, std::uint64_t seed);

EvaluationResult run_evaluation(const Policy& policy, const EvaluationConfig& cfg);
EvaluationResult run_evaluation(const Policy& policy, const std::vector<sim::WorldConfig>& worlds,
                                const EvaluationConfig& cfg);

}  // namespace uavnav::rl
