#include "uavnav/cli/commands.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "uavnav/cli/config.hpp"
#include "uavnav/cli/images.hpp"
#include "uavnav/cli/manifest.hpp"
#include "uavnav/common.hpp"
#include "uavnav/mapping/map_builder.hpp"
#include "uavnav/mapping/map_io.hpp"
#include "uavnav/nn/checkpoint.hpp"
#include "uavnav/planner/transform.hpp"
#include "uavnav/rl/training.hpp"
#include "uavnav/sim/scenario.hpp"

namespace fs = std::filesystem;

namespace uavnav::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

fs::path prepare_out(const std::string& explicit_out) {
  const fs::path out = resolve_out_dir(explicit_out);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec || !fs::is_directory(out)) throw IoError("cannot create output directory " + out.string());
  const fs::path probe = out / ".write-probe";
  {
    std::ofstream p(probe);
    if (!p) throw IoError("output directory is not writable: " + out.string());
  }
  fs::remove(probe, ec);
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw IoError("failed writing " + path.string());
}

void require_file(const std::string& path, const char* flag) {
  if (path.empty()) throw ConfigError(std::string(flag) + ": required");
  if (!fs::is_regular_file(path)) throw ConfigError(std::string(flag) + ": file not found: " + path);
}

std::string absolute_or_empty(const std::string& p) { return p.empty() ? p : fs::absolute(p).string(); }

sim::WorldConfig resolve_world(const ScenarioRef& ref, RunManifest& m) {
  if (!ref.scenario.empty()) {
    require_file(ref.scenario, "--scenario");
    m.add_input(ref.scenario);
    return sim::load_scenario(ref.scenario);
  }
  sim::ScenarioTemplate t;
  try {
    t = sim::parse_template(ref.templ);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("--template: ") + e.what());
  }
  return sim::spawn_scenario(ref.seed, t);
}

std::vector<Vec2> read_poses(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::vector<Vec2> poses;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    for (char& c : line)
      if (c == ',') c = ' ';
    std::istringstream ss(line);
    Vec2 p;
    if (!(ss >> p.x >> p.y)) {
      if (lineno == 1) continue;  // header
      throw ConfigError("--poses: line " + std::to_string(lineno) + ": expected x,y");
    }
    poses.push_back(p);
  }
  if (poses.empty()) throw ConfigError("--poses: no poses in " + path);
  return poses;
}

rl::TrainingConfig load_training_config(const std::string& path, RunManifest& m) {
  rl::TrainingConfig cfg;
  if (!path.empty()) {
    require_file(path, "--config");
    m.add_input(path);
    apply_training_overrides(cfg, read_json_file(path));
  }
  return cfg;
}

void finish(RunManifest& m, const fs::path& out, Clock::time_point t0, int code) {
  m.exit_code = code;
  m.timings["total_seconds"] = seconds_since(t0);
  write_manifest(m, out);
}

// --- map -------------------------------------------------------------------

int do_map(const MapOptions& o) {
  const auto t0 = Clock::now();
  if (!(o.resolution > 0.0)) throw ConfigError("--resolution: must be > 0");
  if (!(o.survey_spacing > 0.0)) throw ConfigError("--survey-spacing: must be > 0");
  RunManifest m;
  m.command = "map";
  m.options = to_json(o);
  m.master_seed = o.scenario.seed;
  m.seed_rule = kSeedRule;
  const sim::WorldConfig world = resolve_world(o.scenario, m);
  std::vector<Vec2> poses;
  if (!o.poses.empty()) {
    require_file(o.poses, "--poses");
    m.add_input(o.poses);
    poses = read_poses(o.poses);
  } else {
    poses = mapping::survey_poses(world, o.survey_spacing, o.survey_clearance);
    if (poses.empty()) throw ConfigError("--survey-spacing: no obstacle-free survey pose in the world");
  }
  const fs::path out = prepare_out(o.out);

  mapping::MapBuildOptions bo;
  bo.resolution = o.resolution;
  const auto t_build = Clock::now();
  const mapping::OccupancyGrid grid = mapping::build_map(world, poses, bo);
  m.timings["build_seconds"] = seconds_since(t_build);

  mapping::MapSidecar side;
  side.image = "map.pgm";
  side.resolution = grid.resolution();
  side.origin = grid.origin();
  side.width = grid.width();
  side.height = grid.height();
  try {
    side.corners = mapping::extract_corners(grid);
  } catch (const ContractViolation&) {
  }
  try {
    side.rotation = mapping::estimate_rotation(grid);
  } catch (const ContractViolation&) {
  }
  side.world_bounds = mapping::WorldBounds{world.x_min, world.x_max, world.y_min, world.y_max};

  mapping::write_pgm(grid, (out / "map.pgm").string());
  mapping::write_sidecar(side, (out / "map.json").string());
  sim::save_scenario(world, (out / "scenario.json").string());
  std::string csv = "x,y\n";
  for (const auto& p : poses) csv += num(p.x) + "," + num(p.y) + "\n";
  write_text(out / "poses.csv", csv);
  for (const char* f : {"map.pgm", "map.json", "scenario.json", "poses.csv"}) m.add_artifact(out, f);
  finish(m, out, t0, kExitOk);
  std::cout << "map: " << grid.width() << "x" << grid.height() << " cells from " << poses.size() << " poses -> "
            << (out / "map.pgm").string() << "\n";
  return kExitOk;
}

// --- plan ------------------------------------------------------------------

Vec2 snap(Vec2 p) { return {std::round(p.x), std::round(p.y)}; }

int do_plan(const PlanOptions& o) {
  const auto t0 = Clock::now();
  require_file(o.map, "--grid");
  planner::TransformMode mode;
  try {
    mode = planner::parse_transform_mode(o.mode);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("--mode: ") + e.what());
  }
  RunManifest m;
  m.command = "plan";
  m.options = to_json(o);
  m.master_seed = o.seed;
  m.seed_rule = kSeedRule;
  m.add_input(o.map);
  const mapping::LoadedMap loaded = mapping::load_map(o.map);
  const auto& grid = loaded.grid;

  planner::RRTConfig rc;
  rc.num_iterations = o.iterations;
  rc.step_size = o.step_size;
  rc.test_range = o.test_range;
  rc.goal_bias = o.goal_bias;
  rc.unknown_is_occupied = o.unknown_is_occupied;
  rc.rng_seed = derive_seed(o.seed, "mission-planner/rrt");
  try {
    rc.validate();
  } catch (const ContractViolation& e) {
    throw ConfigError(e.what());
  }
  const Vec2 start = snap(grid.to_pixel({o.start_x, o.start_y}));
  const Vec2 target = snap(grid.to_pixel({o.target_x, o.target_y}));
  for (const auto& [p, flag] : {std::pair{start, "--start"}, std::pair{target, "--target"}}) {
    const int i = static_cast<int>(p.x), j = static_cast<int>(p.y);
    if (!grid.in_bounds(i, j)) throw ConfigError(std::string(flag) + ": outside the map");
    if (!planner::cell_traversable(grid, i, j, o.unknown_is_occupied)) {
      throw ConfigError(std::string(flag) + ": lies in a blocked cell");
    }
  }
  const fs::path out = prepare_out(o.out);

  const auto t_plan = Clock::now();
  const planner::PlanResult res = planner::plan_rrt(grid, start, target, rc);
  m.timings["plan_seconds"] = seconds_since(t_plan);

  write_text(out / "tree.json", planner::tree_to_json(res.tree).dump(1) + "\n");
  write_ppm(render_plan(grid, res.tree, res.path), (out / "plan.ppm").string());
  m.add_artifact(out, "tree.json");
  m.add_artifact(out, "plan.ppm");

  if (!res.found()) {
    finish(m, out, t0, kExitNoPath);
    std::cerr << "plan: no path within " << o.iterations << " iterations (" << res.tree.nodes.size()
              << " tree nodes written to " << (out / "tree.json").string() << ")\n";
    return kExitNoPath;
  }

  std::vector<Vec2> world_pts;
  const auto& side = loaded.sidecar;
  if (side.corners && side.world_bounds) {
    planner::TransformConfig tc;
    tc.corners = *side.corners;
    tc.x_min_g = side.world_bounds->x_min;
    tc.x_max_g = side.world_bounds->x_max;
    tc.y_min_g = side.world_bounds->y_min;
    tc.y_max_g = side.world_bounds->y_max;
    tc.theta = side.rotation ? side.rotation->theta : 0.0;
    tc.mode = mode;
    world_pts = planner::transform_path(res.path, tc).waypoints;
  } else {
    for (const auto& p : res.path) world_pts.push_back(grid.to_world(p));
  }
  std::string csv = "index,px_x,px_y,world_x,world_y\n";
  for (std::size_t k = 0; k < res.path.size(); ++k) {
    csv += std::to_string(k) + "," + num(res.path[k].x) + "," + num(res.path[k].y) + "," + num(world_pts[k].x) +
           "," + num(world_pts[k].y) + "\n";
  }
  write_text(out / "path.csv", csv);
  m.add_artifact(out, "path.csv");
  finish(m, out, t0, kExitOk);
  std::cout << "plan: " << res.path.size() << " waypoints after " << res.iterations << " iterations -> "
            << (out / "path.csv").string() << "\n";
  return kExitOk;
}

// --- train -----------------------------------------------------------------

int do_train(const TrainOptions& o) {
  const auto t0 = Clock::now();
  RunManifest m;
  m.command = "train";
  m.options = to_json(o);
  m.master_seed = o.seed;
  m.seed_rule = kSeedRule;
  rl::TrainingConfig cfg = load_training_config(o.config, m);
  cfg.master_seed = o.seed;
  if (o.episodes) cfg.episode.n_eps = *o.episodes;
  if (o.no_terminal_mask) cfg.episode.terminal_mask = false;
  cfg.validate();
  cfg.log = [](const std::string& s) { std::cerr << s << "\n"; };
  const fs::path out = prepare_out(o.out);
  write_text(out / "config.json", training_config_to_json(cfg).dump(2) + "\n");

  const auto t_train = Clock::now();
  const rl::TrainingResult res = rl::run_training(cfg, [&](const rl::CurveRow& r) {
    if ((r.episode + 1) % 25 == 0 || r.episode + 1 == cfg.episode.n_eps) {
      std::cerr << "episode " << r.episode + 1 << "/" << cfg.episode.n_eps << "  rolling " << num(r.rolling_avg)
                << "  eps " << num(r.epsilon) << "\n";
    }
  });
  m.timings["train_seconds"] = seconds_since(t_train);

  nn::save_checkpoint(res.policy, res.optimizer, out / "checkpoint.bin");
  std::string curve = "episode,score,rolling_avg,epsilon,buffer_size\n";
  for (const auto& r : res.curve) {
    curve += std::to_string(r.episode) + "," + num(r.score) + "," + num(r.rolling_avg) + "," + num(r.epsilon) +
             "," + std::to_string(r.buffer_size) + "\n";
  }
  write_text(out / "learning_curve.csv", curve);
  std::string resets = "index,exit,loop_seconds,return_seconds,polls,staging_moves,contact_events,min_clearance\n";
  for (std::size_t k = 0; k < res.resets.size(); ++k) {
    const auto& r = res.resets[k];
    resets += std::to_string(k) + "," + rl::to_string(r.exit) + "," + num(r.loop_seconds) + "," +
              num(r.return_seconds) + "," + std::to_string(r.polls) + "," + std::to_string(r.staging_moves) + "," +
              std::to_string(r.contact_events) + "," + num(r.min_clearance) + "\n";
  }
  write_text(out / "resets.csv", resets);
  for (const char* f : {"config.json", "checkpoint.bin", "learning_curve.csv", "resets.csv"}) m.add_artifact(out, f);

  if (res.aborted) {
    finish(m, out, t0, kExitTrainingAborted);
    std::cerr << "train: aborted after " << res.curve.size() << " episodes: " << res.abort_reason
              << " (last good state saved)\n";
    return kExitTrainingAborted;
  }
  finish(m, out, t0, kExitOk);
  std::cout << "train: " << res.curve.size() << " episodes, " << res.env_steps << " steps, " << res.updates
            << " updates -> " << (out / "checkpoint.bin").string() << "\n";
  return kExitOk;
}

// --- eval ------------------------------------------------------------------

std::string trace_csv(const rl::EpisodeTrace& t) {
  std::string s = "step,x,y,action,reward,done_reason\n";
  for (const auto& r : t.rows) {
    s += std::to_string(r.step) + "," + num(r.x) + "," + num(r.y) + "," + std::to_string(r.action) + "," +
         num(r.reward) + "," + sim::to_string(r.reason) + "\n";
  }
  return s;
}

std::string episode_name(int i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "episode_%03d", i);
  return buf;
}

int do_eval(const EvalOptions& o) {
  const auto t0 = Clock::now();
  if (o.policy != "greedy" && o.policy != "random") throw ConfigError("--policy: expected greedy or random");
  if (o.episodes <= 0) throw ConfigError("--episodes: must be > 0");
  if (o.jobs <= 0) throw ConfigError("--jobs: must be > 0");
  RunManifest m;
  m.command = "eval";
  m.options = to_json(o);
  m.master_seed = o.seed;
  m.seed_rule = kSeedRule;
  const rl::TrainingConfig tc = load_training_config(o.config, m);

  rl::Policy policy;
  if (o.policy == "greedy") {
    require_file(o.checkpoint, "--checkpoint");
    m.add_input(o.checkpoint);
    nn::Checkpoint ck = nn::load_checkpoint(o.checkpoint, tc.topology.num_actions);
    if (ck.net.input_dim() != tc.topology.input_dim) {
      throw ConfigError("--checkpoint: network expects " + std::to_string(ck.net.input_dim()) + " inputs, state has " +
                        std::to_string(tc.topology.input_dim));
    }
    policy = rl::greedy_policy(ck.net, tc.learner.scaling);
  } else {
    policy = rl::random_policy();
  }
  const fs::path out = prepare_out(o.out);

  rl::EvaluationConfig ec;
  ec.episode = tc.episode;
  ec.sensing = tc.sensing;
  ec.farmland = tc.farmland;
  ec.master_seed = o.seed;
  ec.n_episodes = o.episodes;
  ec.jobs = o.jobs;
  const auto t_eval = Clock::now();
  const rl::EvaluationResult res = rl::run_evaluation(policy, ec);
  m.timings["eval_seconds"] = seconds_since(t_eval);

  fs::create_directories(out / "traces");
  fs::create_directories(out / "scenarios");
  nlohmann::json episodes = nlohmann::json::array();
  for (int i = 0; i < static_cast<int>(res.episodes.size()); ++i) {
    const auto& ep = res.episodes[i];
    const std::string name = episode_name(i);
    write_text(out / "traces" / (name + ".csv"), trace_csv(ep));
    sim::save_scenario(ep.world, (out / "scenarios" / (name + ".json")).string());
    m.add_artifact(out, "traces/" + name + ".csv");
    m.add_artifact(out, "scenarios/" + name + ".json");
    episodes.push_back({{"index", i},
                        {"world_seed", ep.world_seed},
                        {"steps", ep.steps},
                        {"reason", sim::to_string(ep.reason)},
                        {"success", ep.success}});
  }
  const nlohmann::json summary = {{"policy", o.policy},
                                  {"master_seed", o.seed},
                                  {"n_episodes", o.episodes},
                                  {"successes", res.successes},
                                  {"success_rate", res.success_rate},
                                  {"episodes", episodes}};
  write_text(out / "eval_summary.json", summary.dump(2) + "\n");
  m.add_artifact(out, "eval_summary.json");
  finish(m, out, t0, kExitOk);
  std::cout << "eval: " << res.successes << "/" << o.episodes << " successful (" << num(100.0 * res.success_rate)
            << "%) -> " << (out / "eval_summary.json").string() << "\n";
  return kExitOk;
}

// --- replay ----------------------------------------------------------------

std::vector<Vec2> read_trace_path(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("step,x,y", 0) != 0) {
    throw ConfigError("--trace: expected a header starting with step,x,y");
  }
  std::vector<Vec2> pts;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    for (char& c : line)
      if (c == ',') c = ' ';
    std::istringstream ss(line);
    int step;
    Vec2 p;
    if (!(ss >> step >> p.x >> p.y)) throw ConfigError("--trace: line " + std::to_string(lineno) + ": malformed row");
    pts.push_back(p);
  }
  return pts;
}

int do_replay(const ReplayOptions& o) {
  const auto t0 = Clock::now();
  require_file(o.trace, "--trace");
  require_file(o.scenario, "--scenario");
  if (!(o.pixels_per_metre > 0.0)) throw ConfigError("--scale: must be > 0");
  RunManifest m;
  m.command = "replay";
  m.options = to_json(o);
  m.seed_rule = kSeedRule;
  m.add_input(o.trace);
  m.add_input(o.scenario);
  const std::vector<Vec2> pts = read_trace_path(o.trace);
  const sim::WorldConfig world = sim::load_scenario(o.scenario);
  m.master_seed = world.rng_seed;
  const fs::path out = prepare_out(o.out);
  const std::string name = fs::path(o.trace).stem().string() + ".ppm";
  write_ppm(render_world_path(world, pts, o.pixels_per_metre), (out / name).string());
  m.add_artifact(out, name);
  finish(m, out, t0, kExitOk);
  std::cout << "replay: " << pts.size() << " poses -> " << (out / name).string() << "\n";
  return kExitOk;
}

// --- option round trip for rerun -------------------------------------------

template <typename T>
void get_to(const nlohmann::json& j, const char* key, T& v) {
  if (j.contains(key)) j.at(key).get_to(v);
}

MapOptions map_from_json(const nlohmann::json& j) {
  MapOptions o;
  get_to(j, "scenario", o.scenario.scenario);
  get_to(j, "template", o.scenario.templ);
  get_to(j, "seed", o.scenario.seed);
  get_to(j, "poses", o.poses);
  get_to(j, "survey_spacing", o.survey_spacing);
  get_to(j, "survey_clearance", o.survey_clearance);
  get_to(j, "resolution", o.resolution);
  return o;
}

PlanOptions plan_from_json(const nlohmann::json& j) {
  PlanOptions o;
  get_to(j, "grid", o.map);
  get_to(j, "start_x", o.start_x);
  get_to(j, "start_y", o.start_y);
  get_to(j, "target_x", o.target_x);
  get_to(j, "target_y", o.target_y);
  get_to(j, "iterations", o.iterations);
  get_to(j, "step_size", o.step_size);
  get_to(j, "test_range", o.test_range);
  get_to(j, "goal_bias", o.goal_bias);
  get_to(j, "unknown_is_occupied", o.unknown_is_occupied);
  get_to(j, "seed", o.seed);
  get_to(j, "mode", o.mode);
  return o;
}

TrainOptions train_from_json(const nlohmann::json& j) {
  TrainOptions o;
  get_to(j, "config", o.config);
  get_to(j, "seed", o.seed);
  if (j.contains("episodes") && !j["episodes"].is_null()) o.episodes = j["episodes"].get<int>();
  get_to(j, "no_terminal_mask", o.no_terminal_mask);
  return o;
}

EvalOptions eval_from_json(const nlohmann::json& j) {
  EvalOptions o;
  get_to(j, "checkpoint", o.checkpoint);
  get_to(j, "config", o.config);
  get_to(j, "seed", o.seed);
  get_to(j, "episodes", o.episodes);
  get_to(j, "jobs", o.jobs);
  get_to(j, "policy", o.policy);
  return o;
}

ReplayOptions replay_from_json(const nlohmann::json& j) {
  ReplayOptions o;
  get_to(j, "trace", o.trace);
  get_to(j, "scenario", o.scenario);
  get_to(j, "pixels_per_metre", o.pixels_per_metre);
  return o;
}

int do_rerun(const std::string& manifest_path, const std::string& out) {
  require_file(manifest_path, "--manifest");
  const RunManifest m = read_manifest(manifest_path);
  const fs::path out_dir = resolve_out_dir(out);
  if (fs::exists(out_dir) && fs::equivalent(out_dir, fs::path(manifest_path).parent_path())) {
    throw ConfigError("--out: must differ from the directory of the manifest being re-run");
  }
  int code;
  try {
    if (m.command == "map") {
      auto o = map_from_json(m.options);
      o.out = out_dir.string();
      code = cmd_map(o);
    } else if (m.command == "plan") {
      auto o = plan_from_json(m.options);
      o.out = out_dir.string();
      code = cmd_plan(o);
    } else if (m.command == "train") {
      auto o = train_from_json(m.options);
      o.out = out_dir.string();
      code = cmd_train(o);
    } else if (m.command == "eval") {
      auto o = eval_from_json(m.options);
      o.out = out_dir.string();
      code = cmd_eval(o);
    } else if (m.command == "replay") {
      auto o = replay_from_json(m.options);
      o.out = out_dir.string();
      code = cmd_replay(o);
    } else {
      throw ConfigError("manifest: unknown command '" + m.command + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("manifest options: ") + e.what());
  }
  if (code != m.exit_code) {
    std::cerr << "rerun: exit code " << code << " differs from recorded " << m.exit_code << "\n";
    return kExitMismatch;
  }
  const auto bad = verify_manifest(m, out_dir);
  for (const auto& f : bad) std::cerr << "rerun: checksum mismatch: " << f << "\n";
  if (!bad.empty()) return kExitMismatch;
  std::cout << "rerun: " << m.artifacts.size() << " artifacts reproduced byte-identically\n";
  return kExitOk;
}

template <typename F>
int guarded(const char* name, F&& f) {
  try {
    return f();
  } catch (const ConfigError& e) {
    std::cerr << name << ": config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const nn::CheckpointError& e) {
    std::cerr << name << ": " << e.what() << "\n";
    return kExitConfig;
  } catch (const ContractViolation& e) {
    std::cerr << name << ": invalid input: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << name << ": I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << name << ": I/O error: " << e.what() << "\n";
    return kExitIo;
  }
}

}  // namespace

std::string resolve_out_dir(const std::string& explicit_out) {
  if (!explicit_out.empty()) return explicit_out;
  if (const char* env = std::getenv("RELAX_NAV_OUT"); env && *env) return env;
  return "uavnav-out";
}

int cmd_map(const MapOptions& o) { return guarded("map", [&] { return do_map(o); }); }
int cmd_plan(const PlanOptions& o) { return guarded("plan", [&] { return do_plan(o); }); }
int cmd_train(const TrainOptions& o) { return guarded("train", [&] { return do_train(o); }); }
int cmd_eval(const EvalOptions& o) { return guarded("eval", [&] { return do_eval(o); }); }
int cmd_replay(const ReplayOptions& o) { return guarded("replay", [&] { return do_replay(o); }); }
int cmd_rerun(const std::string& manifest_path, const std::string& out) {
  return guarded("rerun", [&] { return do_rerun(manifest_path, out); });
}

nlohmann::json to_json(const MapOptions& o) {
  return {{"scenario", absolute_or_empty(o.scenario.scenario)},
          {"template", o.scenario.templ},
          {"seed", o.scenario.seed},
          {"poses", absolute_or_empty(o.poses)},
          {"survey_spacing", o.survey_spacing},
          {"survey_clearance", o.survey_clearance},
          {"resolution", o.resolution}};
}

nlohmann::json to_json(const PlanOptions& o) {
  return {{"grid", absolute_or_empty(o.map)},
          {"start_x", o.start_x},
          {"start_y", o.start_y},
          {"target_x", o.target_x},
          {"target_y", o.target_y},
          {"iterations", o.iterations},
          {"step_size", o.step_size},
          {"test_range", o.test_range},
          {"goal_bias", o.goal_bias},
          {"unknown_is_occupied", o.unknown_is_occupied},
          {"seed", o.seed},
          {"mode", o.mode}};
}

nlohmann::json to_json(const TrainOptions& o) {
  return {{"config", absolute_or_empty(o.config)},
          {"seed", o.seed},
          {"episodes", o.episodes ? nlohmann::json(*o.episodes) : nlohmann::json(nullptr)},
          {"no_terminal_mask", o.no_terminal_mask}};
}

nlohmann::json to_json(const EvalOptions& o) {
  return {{"checkpoint", absolute_or_empty(o.checkpoint)},
          {"config", absolute_or_empty(o.config)},
          {"seed", o.seed},
          {"episodes", o.episodes},
          {"jobs", o.jobs},
          {"policy", o.policy}};
}

nlohmann::json to_json(const ReplayOptions& o) {
  return {{"trace", absolute_or_empty(o.trace)},
          {"scenario", absolute_or_empty(o.scenario)},
          {"pixels_per_metre", o.pixels_per_metre}};
}

}  // namespace uavnav::cli
