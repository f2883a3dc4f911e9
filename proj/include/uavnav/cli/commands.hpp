#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

namespace uavnav::cli {

/// Stable exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitIo = 2,
  kExitNoPath = 3,
  kExitTrainingAborted = 4,
  /// `rerun` produced artifacts that differ from the manifest.
  kExitMismatch = 5,
};

/// Output directory: explicit value, else $RELAX_NAV_OUT, else ./uavnav-out.
std::string resolve_out_dir(const std::string& explicit_out);

struct ScenarioRef {
  /// Scenario file; when empty, template + seed are used.
  std::string scenario;
  std::string templ = "farmland";
  std::uint64_t seed = 0;
};

struct MapOptions {
  ScenarioRef scenario;
  /// CSV of x,y poses; empty means a survey lattice.
  std::string poses;
  double survey_spacing = 4.0;
  double survey_clearance = 1.0;
  double resolution = 0.1;
  std::string out;
};

struct PlanOptions {
  std::string map;
  double start_x = 0.0, start_y = 0.0;
  double target_x = 0.0, target_y = 0.0;
  int iterations = 5000;
  double step_size = 5.0;
  double test_range = 5.0;
  double goal_bias = 0.05;
  bool unknown_is_occupied = true;
  std::uint64_t seed = 0;
  std::string mode = "affine";
  std::string out;
};

struct TrainOptions {
  std::string config;
  std::uint64_t seed = 0;
  std::optional<int> episodes;
  bool no_terminal_mask = false;
  std::string out;
};

struct EvalOptions {
  std::string checkpoint;
  std::string config;
  std::uint64_t seed = 0;
  int episodes = 50;
  int jobs = 1;
  std::string policy = "greedy";
  std::string out;
};

struct ReplayOptions {
  std::string trace;
  std::string scenario;
  double pixels_per_metre = 10.0;
  std::string out;
};

int cmd_map(const MapOptions& o);
int cmd_plan(const PlanOptions& o);
int cmd_train(const TrainOptions& o);
int cmd_eval(const EvalOptions& o);
int cmd_replay(const ReplayOptions& o);
/// Re-runs the command recorded in a manifest into `out` and compares the
/// artifact checksums. Exit 0 when every artifact matches.
int cmd_rerun(const std::string& manifest_path, const std::string& out);

nlohmann::json to_json(const MapOptions& o);
nlohmann::json to_json(const PlanOptions& o);
nlohmann::json to_json(const TrainOptions& o);
nlohmann::json to_json(const EvalOptions& o);
nlohmann::json to_json(const ReplayOptions& o);

}  // namespace uavnav::cli
