#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "uavnav/cli/commands.hpp"

namespace {

// "x,y" -> two doubles.
CLI::Option* add_point(CLI::App* app, const std::string& name, double& x, double& y, const std::string& help) {
  return app
      ->add_option_function<std::string>(
          name,
          [&x, &y, name](const std::string& v) {
            std::string s = v;
            for (char& c : s)
              if (c == ',') c = ' ';
            std::istringstream in(s);
            std::string rest;
            if (!(in >> x >> y) || (in >> rest)) throw CLI::ValidationError(name, "expected x,y in metres");
          },
          help)
      ->type_name("X,Y");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace uavnav::cli;
  CLI::App app{"uavnav: LiDAR-only drone navigation toolkit (mapping, planning, D3QN training and evaluation)"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all subcommand help");

  MapOptions map;
  auto* map_cmd = app.add_subcommand("map", "Simulate scans at known poses and export an occupancy map");
  map_cmd->add_option("--scenario", map.scenario.scenario, "Scenario JSON file");
  map_cmd->add_option("--template", map.scenario.templ, "Scenario template: farmland, corridor, empty")
      ->capture_default_str();
  map_cmd->add_option("--seed", map.scenario.seed, "Scenario seed (with --template)")->capture_default_str();
  map_cmd->add_option("--poses", map.poses, "CSV of x,y scan poses (default: survey lattice)");
  map_cmd->add_option("--survey-spacing", map.survey_spacing, "Survey lattice spacing (m)")->capture_default_str();
  map_cmd->add_option("--survey-clearance", map.survey_clearance, "Minimum obstacle clearance of survey poses (m)")
      ->capture_default_str();
  map_cmd->add_option("--resolution", map.resolution, "Cell size (m)")->capture_default_str();
  map_cmd->add_option("--out", map.out, "Output directory");

  PlanOptions plan;
  auto* plan_cmd = app.add_subcommand("plan", "RRT path on an occupancy map, exported in pixel and world frames");
  plan_cmd->add_option("--grid,--map", plan.map, "map.pgm or its JSON sidecar")->required();
  add_point(plan_cmd, "--start", plan.start_x, plan.start_y, "Start position (world metres)")->required();
  add_point(plan_cmd, "--target", plan.target_x, plan.target_y, "Target position (world metres)")->required();
  plan_cmd->add_option("--iterations", plan.iterations, "Iteration budget")->capture_default_str();
  plan_cmd->add_option("--step-size", plan.step_size, "Steering step (pixels)")->capture_default_str();
  plan_cmd->add_option("--test-range", plan.test_range, "Goal connection radius (pixels)")->capture_default_str();
  plan_cmd->add_option("--goal-bias", plan.goal_bias, "Probability of sampling the target")->capture_default_str();
  plan_cmd->add_flag("!--unknown-free", plan.unknown_is_occupied, "Treat unknown cells as traversable");
  plan_cmd->add_option("--seed", plan.seed, "Master seed")->capture_default_str();
  plan_cmd->add_option("--mode", plan.mode, "Pixel to world transform: affine or literal")->capture_default_str();
  plan_cmd->add_option("--out", plan.out, "Output directory");

  TrainOptions train;
  int train_episodes = 0;
  auto* train_cmd = app.add_subcommand("train", "Train the D3QN agent on seeded farmland episodes");
  train_cmd->add_option("--config", train.config, "JSON parameter overrides");
  train_cmd->add_option("--seed", train.seed, "Master seed")->capture_default_str();
  auto* ep_opt = train_cmd->add_option("--episodes", train_episodes, "Override the episode count");
  train_cmd->add_flag("--no-terminal-mask", train.no_terminal_mask, "Bootstrap through terminal transitions");
  train_cmd->add_option("--out", train.out, "Output directory");

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a checkpoint on seeded farmland episodes");
  eval_cmd->add_option("--checkpoint", eval.checkpoint, "checkpoint.bin from train");
  eval_cmd->add_option("--config", eval.config, "JSON parameter overrides (same schema as train)");
  eval_cmd->add_option("--seed", eval.seed, "Master seed")->capture_default_str();
  eval_cmd->add_option("--episodes", eval.episodes, "Number of test episodes")->capture_default_str();
  eval_cmd->add_option("--jobs", eval.jobs, "Parallel episodes")->capture_default_str();
  eval_cmd->add_option("--policy", eval.policy, "greedy (needs --checkpoint) or random")->capture_default_str();
  eval_cmd->add_option("--out", eval.out, "Output directory");

  ReplayOptions replay;
  auto* replay_cmd = app.add_subcommand("replay", "Render a stored evaluation trace over its scenario");
  replay_cmd->add_option("--trace", replay.trace, "traces/episode_NNN.csv")->required();
  replay_cmd->add_option("--scenario", replay.scenario, "scenarios/episode_NNN.json")->required();
  replay_cmd->add_option("--scale", replay.pixels_per_metre, "Pixels per metre")->capture_default_str();
  replay_cmd->add_option("--out", replay.out, "Output directory");

  std::string manifest, rerun_out;
  auto* rerun_cmd = app.add_subcommand("rerun", "Re-run a recorded manifest and compare artifact checksums");
  rerun_cmd->add_option("manifest", manifest, "manifest.json of a previous run")->required();
  rerun_cmd->add_option("--out", rerun_out, "Output directory for the re-run")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }
  if (*ep_opt) train.episodes = train_episodes;

  if (map_cmd->parsed()) return cmd_map(map);
  if (plan_cmd->parsed()) return cmd_plan(plan);
  if (train_cmd->parsed()) return cmd_train(train);
  if (eval_cmd->parsed()) return cmd_eval(eval);
  if (replay_cmd->parsed()) return cmd_replay(replay);
  return cmd_rerun(manifest, rerun_out);
}
