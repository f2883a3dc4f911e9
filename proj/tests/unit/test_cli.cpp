#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "room_fixture.hpp"
#include "uavnav/cli/commands.hpp"
#include "uavnav/cli/manifest.hpp"
#include "uavnav/mapping/map_io.hpp"
#include "uavnav/sim/scenario.hpp"

namespace fs = std::filesystem;
using namespace uavnav;
using namespace uavnav::cli;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("uavnav_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path dir_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

int count_lines(const fs::path& p) {
  std::ifstream in(p);
  int n = 0;
  for (std::string line; std::getline(in, line);) n += !line.empty();
  return n;
}

// Runs the CLI binary; returns its exit status and captures stderr.
int run_cli(const std::string& args, std::string* err = nullptr, const fs::path& err_file = {}) {
  const fs::path log = err_file.empty() ? fs::temp_directory_path() / "uavnav_cli_stderr.txt" : err_file;
  const std::string cmd = std::string(UAVNAV_BIN) + " " + args + " >/dev/null 2>" + log.string();
  const int status = std::system(cmd.c_str());
  if (err) *err = slurp(log);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// Free 60x60 grid at 0.1 m with a closed box of occupied cells around
// cells 30..50 x 30..50.
void write_boxed_map(const fs::path& dir) {
  mapping::OccupancyGrid g(60, 60, 0.1, {0.0, 0.0});
  for (int j = 0; j < 60; ++j)
    for (int i = 0; i < 60; ++i) {
      const bool wall = (i >= 30 && i <= 50 && (j == 30 || j == 50)) || (j >= 30 && j <= 50 && (i == 30 || i == 50));
      g.set(i, j, wall ? g.params().max : g.params().min);
    }
  mapping::write_pgm(g, (dir / "boxed.pgm").string());
  mapping::MapSidecar s;
  s.image = "boxed.pgm";
  s.resolution = 0.1;
  s.origin = {0.0, 0.0};
  s.width = 60;
  s.height = 60;
  mapping::write_sidecar(s, (dir / "boxed.json").string());
}

}  // namespace

TEST_F(CliTest, MapEmptyWorldOnePoseIsFree) {
  const auto world = sim::spawn_scenario(2, sim::ScenarioTemplate::Empty);
  sim::save_scenario(world, (dir_ / "empty.json").string());
  write(dir_ / "poses.csv", "x,y\n" + std::to_string(world.start.x) + "," + std::to_string(world.start.y) + "\n");
  MapOptions o;
  o.scenario.scenario = (dir_ / "empty.json").string();
  o.poses = (dir_ / "poses.csv").string();
  o.out = (dir_ / "out").string();
  ASSERT_EQ(cmd_map(o), kExitOk);
  const auto loaded = mapping::load_map((dir_ / "out" / "map.pgm").string());
  const auto& g = loaded.grid;
  int free_near = 0, occupied = 0, near = 0;
  for (int j = 0; j < g.height(); ++j)
    for (int i = 0; i < g.width(); ++i) {
      const auto cls = g.classify(i, j);
      occupied += cls == mapping::CellClass::Occupied;
      const double d = distance(g.cell_center(i, j), world.start);
      // A cell needs three misses to classify free; one pose gives that
      // out to about 2 m.
      if (d > 0.2 && d < 2.0) {
        ++near;
        free_near += cls == mapping::CellClass::Free;
      }
    }
  EXPECT_EQ(occupied, 0);
  EXPECT_EQ(free_near, near);
}

TEST_F(CliTest, MapRoomPassesAccuracyOracle) {
  const auto room = room_fixture::world();
  sim::save_scenario(room, (dir_ / "room.json").string());
  std::string csv = "x,y\n";
  for (const auto& p : room_fixture::poses()) csv += std::to_string(p.x) + "," + std::to_string(p.y) + "\n";
  write(dir_ / "poses.csv", csv);
  MapOptions o;
  o.scenario.scenario = (dir_ / "room.json").string();
  o.poses = (dir_ / "poses.csv").string();
  o.out = (dir_ / "out").string();
  ASSERT_EQ(cmd_map(o), kExitOk);
  const auto loaded = mapping::load_map((dir_ / "out" / "map.pgm").string());
  const auto acc = room_fixture::accuracy(loaded.grid, room);
  EXPECT_GE(acc.fraction(), 0.95) << acc.correct << "/" << acc.evaluated;
  EXPECT_TRUE(loaded.sidecar.corners.has_value());
}

TEST_F(CliTest, MapSameSeedSameBytes) {
  for (const char* sub : {"a", "b"}) {
    MapOptions o;
    o.scenario.seed = 41;
    o.out = (dir_ / sub).string();
    ASSERT_EQ(cmd_map(o), kExitOk);
  }
  EXPECT_EQ(slurp(dir_ / "a" / "map.pgm"), slurp(dir_ / "b" / "map.pgm"));
  EXPECT_EQ(slurp(dir_ / "a" / "map.json"), slurp(dir_ / "b" / "map.json"));
}

TEST_F(CliTest, TrainSmokeWritesTwoCurveRows) {
  write(dir_ / "cfg.json", R"({"episode": {"n_eps": 2, "batch_size": 8},
                              "topology": {"trunk": [16, 16], "value_hidden": [8], "advantage_hidden": [8]}})");
  TrainOptions o;
  o.config = (dir_ / "cfg.json").string();
  o.seed = 3;
  o.out = (dir_ / "out").string();
  ASSERT_EQ(cmd_train(o), kExitOk);
  EXPECT_EQ(count_lines(dir_ / "out" / "learning_curve.csv"), 3);  // header + 2
  EXPECT_TRUE(fs::exists(dir_ / "out" / "checkpoint.bin"));
  EXPECT_TRUE(verify_manifest(read_manifest(dir_ / "out" / kManifestFile), dir_ / "out").empty());
}

TEST_F(CliTest, EvalMissingCheckpointIsConfigError) {
  std::string err;
  EXPECT_EQ(run_cli("eval --checkpoint " + (dir_ / "nope.bin").string() + " --out " + (dir_ / "out").string(), &err),
            1);
  EXPECT_NE(err.find("--checkpoint"), std::string::npos) << err;
}

TEST_F(CliTest, BadConfigTypeNamesField) {
  write(dir_ / "cfg.json", R"({"episode": {"n_eps": "many"}})");
  std::string err;
  EXPECT_EQ(run_cli("train --config " + (dir_ / "cfg.json").string() + " --out " + (dir_ / "out").string(), &err), 1);
  EXPECT_NE(err.find("episode.n_eps"), std::string::npos) << err;
  write(dir_ / "cfg.json", R"({"episode": {"n_episodes": 3}})");
  EXPECT_EQ(run_cli("train --config " + (dir_ / "cfg.json").string() + " --out " + (dir_ / "out").string(), &err), 1);
  EXPECT_NE(err.find("n_episodes"), std::string::npos) << err;
}

TEST_F(CliTest, UnwritableOutputIsIoError) {
  EXPECT_EQ(run_cli("map --seed 1 --out /proc/uavnav-cannot-write"), 2);
}

TEST_F(CliTest, UsageErrorsExitOne) {
  EXPECT_EQ(run_cli("plan --start 1,2"), 1);
  EXPECT_EQ(run_cli("frobnicate"), 1);
  EXPECT_EQ(run_cli("--help"), 0);
}

TEST_F(CliTest, WalledOffTargetIsNoPathWithTreeDump) {
  write_boxed_map(dir_);
  PlanOptions o;
  o.map = (dir_ / "boxed.pgm").string();
  o.start_x = 0.5;
  o.start_y = 0.5;
  o.target_x = 4.0;
  o.target_y = 4.0;
  o.iterations = 300;
  o.out = (dir_ / "out").string();
  EXPECT_EQ(cmd_plan(o), kExitNoPath);
  ASSERT_TRUE(fs::exists(dir_ / "out" / "tree.json"));
  const auto tree = nlohmann::json::parse(slurp(dir_ / "out" / "tree.json"));
  EXPECT_GT(tree["nodes"].size(), 1u);
  EXPECT_FALSE(fs::exists(dir_ / "out" / "path.csv"));
  const auto m = read_manifest(dir_ / "out" / kManifestFile);
  EXPECT_EQ(m.exit_code, kExitNoPath);
}

TEST_F(CliTest, ManifestChecksumsAndRerun) {
  write_boxed_map(dir_);
  PlanOptions o;
  o.map = (dir_ / "boxed.pgm").string();
  o.start_x = 0.5;
  o.start_y = 0.5;
  o.target_x = 5.5;
  o.target_y = 1.0;
  o.seed = 12;
  o.out = (dir_ / "run").string();
  ASSERT_EQ(cmd_plan(o), kExitOk);
  const auto manifest = dir_ / "run" / kManifestFile;
  const auto m = read_manifest(manifest);
  ASSERT_FALSE(m.artifacts.empty());
  for (const auto& a : m.artifacts) {
    EXPECT_EQ(a.sha1, git_blob_hash_file(dir_ / "run" / a.path)) << a.path;
    EXPECT_EQ(a.bytes, fs::file_size(dir_ / "run" / a.path));
  }
  EXPECT_TRUE(verify_manifest(m, dir_ / "run").empty());
  EXPECT_EQ(cmd_rerun(manifest.string(), (dir_ / "again").string()), kExitOk);
  EXPECT_EQ(slurp(dir_ / "run" / "path.csv"), slurp(dir_ / "again" / "path.csv"));

  // A tampered artifact is detected, and a manifest whose recorded
  // checksum disagrees makes rerun report a mismatch.
  write(dir_ / "run" / "path.csv", "tampered\n");
  EXPECT_EQ(verify_manifest(m, dir_ / "run"), std::vector<std::string>{"path.csv"});
  auto j = nlohmann::json::parse(slurp(manifest));
  for (auto& a : j["artifacts"])
    if (a["path"] == "path.csv") a["sha1"] = std::string(40, '0');
  write(manifest, j.dump(2));
  EXPECT_EQ(cmd_rerun(manifest.string(), (dir_ / "third").string()), kExitMismatch);
}

TEST_F(CliTest, GitBlobHashMatchesKnownValues) {
  // `printf 'hello\n' | git hash-object --stdin` and the empty blob.
  EXPECT_EQ(git_blob_hash("hello\n"), "ce013625030ba8dba906f756967f9e9ca394464a");
  EXPECT_EQ(git_blob_hash(""), "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
}

TEST_F(CliTest, OutDirFromEnvironment) {
  ::setenv("RELAX_NAV_OUT", (dir_ / "env").c_str(), 1);
  EXPECT_EQ(resolve_out_dir(""), (dir_ / "env").string());
  EXPECT_EQ(resolve_out_dir("explicit"), "explicit");
  ::unsetenv("RELAX_NAV_OUT");
  EXPECT_EQ(resolve_out_dir(""), "uavnav-out");
}

TEST_F(CliTest, EvalTracesAndReplay) {
  EvalOptions e;
  e.policy = "random";
  e.episodes = 3;
  e.seed = 2;
  e.out = (dir_ / "eval").string();
  ASSERT_EQ(cmd_eval(e), kExitOk);
  const auto summary = nlohmann::json::parse(slurp(dir_ / "eval" / "eval_summary.json"));
  EXPECT_TRUE(summary.contains("success_rate"));
  const auto trace = dir_ / "eval" / "traces" / "episode_000.csv";
  ASSERT_TRUE(fs::exists(trace));
  EXPECT_EQ(slurp(trace).substr(0, 34), "step,x,y,action,reward,done_reason");
  ReplayOptions r;
  r.trace = trace.string();
  r.scenario = (dir_ / "eval" / "scenarios" / "episode_000.json").string();
  r.out = (dir_ / "replay").string();
  ASSERT_EQ(cmd_replay(r), kExitOk);
  EXPECT_EQ(slurp(dir_ / "replay" / "episode_000.ppm").substr(0, 2), "P6");
}
