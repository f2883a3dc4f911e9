#include "uavnav/rl/training.hpp"

#include <algorithm>
#include <thread>

namespace uavnav::rl {

void TrainingConfig::validate() const {
  episode.validate();
  reset.validate();
  if (rolling_window <= 0) throw ConfigError("rolling_window: must be > 0");
  if (updates_per_step < 0) throw ConfigError("updates_per_step: must be >= 0");
  if (topology.input_dim != lidar::kStateDim) throw ConfigError("topology.input_dim: must be 11");
  if (topology.num_actions != sim::kNumActions) throw ConfigError("topology.num_actions: must be 8");
  if (!(adam.lr > 0.0)) throw ConfigError("lr: must be > 0");
  if (!(learner.reward_scale > 0.0)) throw ConfigError("reward_scale: must be > 0");
  if (sensing.max_sense_polls < 1) throw ConfigError("max_sense_polls: must be >= 1");
  if (!(sensing.filter.det_range > 0.0)) throw ConfigError("det_range: must be > 0");
}

WorldFactory farmland_factory(std::uint64_t master_seed, std::string_view stream, const sim::FarmlandParams& params,
                              const EpisodeConfig& episode) {
  sim::FarmlandParams p = params;
  p.target_range = episode.target_range;
  p.target_exclusion = episode.target_exclusion;
  p.col_threshold = episode.col_threshold;
  return [master_seed, stream = std::string(stream), p](int ep) {
    return sim::spawn_scenario(derive_seed(master_seed, stream, static_cast<std::uint64_t>(ep)),
                               sim::ScenarioTemplate::Farmland, p);
  };
}

namespace {

LearnerConfig learner_for(const TrainingConfig& cfg) {
  LearnerConfig l = cfg.learner;
  l.gamma = cfg.episode.gamma;
  l.terminal_mask = cfg.episode.terminal_mask;
  return l;
}

}  // namespace

TrainingResult run_training(const TrainingConfig& cfg, const WorldFactory& factory,
                            const EpisodeCallback& on_episode) {
  cfg.validate();
  const auto log = [&](const std::string& msg) {
    if (cfg.log) cfg.log(msg);
  };
  const std::uint64_t m = cfg.master_seed;
  std::mt19937_64 policy_rng(derive_seed(m, "rl-agent/policy"));
  std::mt19937_64 replay_rng(derive_seed(m, "rl-agent/replay"));
  const LearnerConfig learner = learner_for(cfg);

  TrainingResult res;
  res.policy = nn::DuelingNet(cfg.topology, derive_seed(m, "neural-core/init"));
  res.target = res.policy;
  res.optimizer = nn::OptimizerState::for_net(res.policy, cfg.adam);
  ReplayBuffer buffer(cfg.episode.memory_size);
  EpsilonSchedule sched{cfg.episode.eps_max, cfg.episode.eps_min, cfg.episode.eps_decay, 0};
  std::vector<double> scores;

  for (int ep = 0; ep < cfg.episode.n_eps && !res.aborted; ++ep) {
    NavigationEnv env(factory(ep), cfg.episode, cfg.sensing, derive_seed(m, "rl-agent/env", ep));
    if (ep == 0) log("arming wait skipped: the simulated drone is always armed");
    lidar::AgentState state = env.initial().state;
    bool done = env.initial().done;
    sim::DoneReason reason = env.initial().reason;
    double score = 0.0;
    while (!done && !res.aborted) {
      const int action = select_action(res.policy, state, sched, policy_rng, learner.scaling);
      const StepResult r = env.step(action);
      buffer.push({state, action, r.reward, r.state, r.done});
      score += r.reward;
      state = r.state;
      done = r.done;
      reason = r.reason;
      ++res.env_steps;
      if (buffer.size() >= cfg.episode.batch_size) {
        for (int u = 0; u < cfg.updates_per_step; ++u) {
          const auto batch = buffer.sample(cfg.episode.batch_size, replay_rng);
          try {
            train_step(res.policy, res.target, res.optimizer, batch, learner);
          } catch (const nn::NumericalError& e) {
            res.aborted = true;
            res.abort_reason = e.what();
            log(std::string("training aborted: ") + e.what());
            break;
          }
          ++res.updates;
        }
      }
      sync_target(res.policy, res.target, res.env_steps, cfg.episode.f_u);
    }
    if (cfg.run_resets) res.resets.push_back(reset_sequence(env.drone(), cfg.reset, env.drone().world().start));

    scores.push_back(score);
    const std::size_t w = std::min<std::size_t>(scores.size(), static_cast<std::size_t>(cfg.rolling_window));
    double sum = 0.0;
    for (std::size_t k = scores.size() - w; k < scores.size(); ++k) sum += scores[k];
    CurveRow row{ep, score, sum / static_cast<double>(w), sched.epsilon(), buffer.size(), env.step_count(), reason};
    res.curve.push_back(row);
    if (on_episode) on_episode(row);
  }
  return res;
}

TrainingResult run_training(const TrainingConfig& cfg, const EpisodeCallback& on_episode) {
  return run_training(cfg, farmland_factory(cfg.master_seed, "rl-agent/train-world", cfg.farmland, cfg.episode),
                      on_episode);
}

Policy greedy_policy(const nn::DuelingNet& net, InputScaling scaling) {
  return [net, scaling](const lidar::AgentState& s, std::mt19937_64&) { return greedy_action(net, s, scaling); };
}

Policy random_policy() {
  return [](const lidar::AgentState&, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pick(0, sim::kNumActions - 1);
    return pick(rng);
  };
}

std::vector<std::uint64_t> evaluation_seeds(std::uint64_t master_seed, int n) {
  std::vector<std::uint64_t> seeds;
  for (int i = 0; i < n; ++i) seeds.push_back(derive_seed(master_seed, "rl-agent/eval-world", i));
  return seeds;
}

EpisodeTrace run_episode(const sim::WorldConfig& world, const Policy& policy, const EpisodeConfig& episode,
                         const SensingConfig& sensing, std::uint64_t seed) {
  NavigationEnv env(world, episode, sensing, derive_seed(seed, "rl-agent/eval-env"));
  std::mt19937_64 rng(derive_seed(seed, "rl-agent/eval-policy"));
  EpisodeTrace trace;
  trace.world_seed = world.rng_seed;
  trace.world = world;
  const auto& p0 = env.drone().pose();
  trace.rows.push_back({0, p0.x, p0.y, -1, 0.0, env.initial().reason});
  lidar::AgentState state = env.initial().state;
  bool done = env.initial().done;
  trace.reason = env.initial().reason;
  while (!done) {
    const int action = policy(state, rng);
    const StepResult r = env.step(action);
    const auto& p = env.drone().pose();
    trace.rows.push_back({env.step_count(), p.x, p.y, action, r.reward, r.reason});
    state = r.state;
    done = r.done;
    trace.reason = r.reason;
  }
  trace.steps = env.step_count();
  trace.success = trace.reason == sim::DoneReason::Target;
  return trace;
}

EvaluationResult run_evaluation(const Policy& policy, const std::vector<sim::WorldConfig>& worlds,
                                const EvaluationConfig& cfg) {
  cfg.episode.validate();
  EvaluationResult res;
  res.episodes.resize(worlds.size());
  const auto run_one = [&](std::size_t i) {
    res.episodes[i] = run_episode(worlds[i], policy, cfg.episode, cfg.sensing,
                                  derive_seed(cfg.master_seed, "rl-agent/eval-episode", i));
  };
  const std::size_t jobs = static_cast<std::size_t>(std::max(1, cfg.jobs));
  if (jobs == 1) {
    for (std::size_t i = 0; i < worlds.size(); ++i) run_one(i);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) {
      pool.emplace_back([&, j] {
        for (std::size_t i = j; i < worlds.size(); i += jobs) run_one(i);
      });
    }
    for (auto& t : pool) t.join();
  }
  for (const auto& e : res.episodes) res.successes += e.success ? 1 : 0;
  res.success_rate = worlds.empty() ? 0.0 : static_cast<double>(res.successes) / static_cast<double>(worlds.size());
  return res;
}

EvaluationResult run_evaluation(const Policy& policy, const EvaluationConfig& cfg) {
  const WorldFactory factory = farmland_factory(cfg.master_seed, "rl-agent/eval-world", cfg.farmland, cfg.episode);
  std::vector<sim::WorldConfig> worlds;
  for (int i = 0; i < cfg.n_episodes; ++i) worlds.push_back(factory(i));
  return run_evaluation(policy, worlds, cfg);
}

}  // namespace uavnav::rl
