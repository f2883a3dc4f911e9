#include <array>
#include <cmath>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "room_fixture.hpp"
#include "uavnav/mapping/map_builder.hpp"
#include "uavnav/mapping/map_geometry.hpp"
#include "uavnav/mapping/map_io.hpp"
#include "uavnav/mapping/scan_matcher.hpp"

using namespace uavnav;
using namespace uavnav::mapping;

namespace {

lidar::RawScan single_beam(double r, double max_range = lidar::kDefaultMaxRange) {
  lidar::RawScan s;
  s.max_range = max_range;
  s.ranges.fill(0.01);  // stays inside the sensor cell
  s.ranges[0] = r;
  return s;
}

}  // namespace

TEST(TraceCells, MatchesDenseSamplingOracle) {
  OccupancyGrid g(60, 40, 0.1, {-3.0, -2.0});
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ux(-2.95, 2.95), uy(-1.95, 1.95);
  for (int trial = 0; trial < 300; ++trial) {
    const Vec2 a{ux(rng), uy(rng)}, b{ux(rng), uy(rng)};
    const auto cells = trace_cells(g, a, b);
    ASSERT_FALSE(cells.empty());
    EXPECT_EQ(cells.front(), g.cell_of(a));
    EXPECT_EQ(cells.back(), g.cell_of(b));
    std::set<std::pair<int, int>> traced;
    for (const auto& c : cells) traced.insert({c.i, c.j});
    EXPECT_EQ(traced.size(), cells.size()) << "a cell was visited twice";
    // Every sampled point's cell is visited.
    const int n = 20000;
    for (int k = 0; k <= n; ++k) {
      const Vec2 p = a + (b - a) * (static_cast<double>(k) / n);
      const auto c = g.cell_of(p);
      ASSERT_TRUE(traced.count({c.i, c.j})) << "trial " << trial;
    }
    // Every visited cell is touched by the segment.
    const Vec2 pa = g.to_pixel(a), pb = g.to_pixel(b);
    for (const auto& c : cells) EXPECT_TRUE(oracle::segment_hits_square(pa, pb, c.i, c.j, 0.5 + 1e-9));
  }
}

TEST(Integrate, SingleBeamTwentyNineMissesOneHit) {
  OccupancyGrid g(80, 20, 0.1, {0.0, -1.0});
  const PoseEstimate pose{0.05, 0.05, 0.0};
  integrate_scan(g, pose, single_beam(3.0));
  const auto p = g.params();
  int misses = 0, hits = 0, touched = 0;
  for (int j = 0; j < g.height(); ++j) {
    for (int i = 0; i < g.width(); ++i) {
      const double v = g.at(i, j);
      if (v == 0.0) continue;
      ++touched;
      misses += v == p.miss;
      hits += v == p.hit;
    }
  }
  EXPECT_EQ(misses, 29);
  EXPECT_EQ(hits, 1);
  EXPECT_EQ(touched, 30);
  const auto end = g.cell_of({3.05, 0.05});
  EXPECT_EQ(g.at(end.i, end.j), p.hit);
  EXPECT_EQ(g.at(g.cell_of({0.05, 0.05}).i, 10), 0.0);  // sensor cell untouched
}

TEST(Integrate, MaxRangeBeamHasNoHit) {
  OccupancyGrid g(80, 20, 0.1, {0.0, -1.0});
  integrate_scan(g, {0.05, 0.05, 0.0}, single_beam(5.0, 5.0));
  int misses = 0;
  for (double v : g.cells()) {
    EXPECT_NE(v, g.params().hit);
    misses += v == g.params().miss;
  }
  EXPECT_EQ(misses, 50);
}

TEST(Integrate, AdditiveUntilClamped) {
  LogOddsParams lp;
  OccupancyGrid once(80, 20, 0.1, {0.0, -1.0}, lp), twice = once;
  integrate_scan(once, {0.05, 0.05, 0.0}, single_beam(3.0));
  integrate_scan(twice, {0.05, 0.05, 0.0}, single_beam(3.0));
  integrate_scan(twice, {0.05, 0.05, 0.0}, single_beam(3.0));
  for (std::size_t k = 0; k < once.cells().size(); ++k) {
    EXPECT_DOUBLE_EQ(twice.cells()[k], std::clamp(2.0 * once.cells()[k], lp.min, lp.max));
  }
  OccupancyGrid many = once;
  for (int n = 0; n < 20; ++n) integrate_scan(many, {0.05, 0.05, 0.0}, single_beam(3.0));
  for (double v : many.cells()) EXPECT_TRUE(v >= lp.min && v <= lp.max);
}

TEST(Integrate, PoseOutsideGridThrows) {
  OccupancyGrid g(10, 10, 0.1, {0.0, 0.0});
  EXPECT_THROW(integrate_scan(g, {5.0, 5.0, 0.0}, single_beam(1.0)), ContractViolation);
}

TEST(Grid, PixelWorldRoundTrip) {
  OccupancyGrid g(50, 30, 0.1, {-2.5, -1.5});
  const Vec2 c = g.cell_center(7, 4);
  EXPECT_NEAR(g.to_pixel(c).x, 7.0, 1e-12);
  EXPECT_NEAR(g.to_pixel(c).y, 4.0, 1e-12);
  EXPECT_NEAR(g.to_world({7.0, 4.0}).x, c.x, 1e-12);
}

TEST(Pyramid, SingleLevelIsInput) {
  OccupancyGrid g(16, 16, 0.1, {});
  g.set(3, 4, 2.0);
  const auto p = build_pyramid(g, 1);
  ASSERT_EQ(p.levels.size(), 1u);
  EXPECT_EQ(p.levels[0].cells().size(), g.cells().size());
  EXPECT_TRUE(std::equal(g.cells().begin(), g.cells().end(), p.levels[0].cells().begin()));
}

TEST(Pyramid, OccupiedCellSurvivesEveryLevel) {
  OccupancyGrid g(64, 64, 0.1, {});
  g.set(37, 21, 4.0);
  const auto p = build_pyramid(g, 5);
  for (std::size_t k = 0; k < p.levels.size(); ++k) {
    const int f = 1 << k;
    EXPECT_TRUE(p.levels[k].is_occupied(37 / f, 21 / f)) << k;
    EXPECT_NEAR(p.levels[k].resolution(), 0.1 * f, 1e-12);
  }
}

TEST(Pyramid, Dimensions) {
  OccupancyGrid g(100, 100, 0.1, {});
  const auto p = build_pyramid(g, 3);
  ASSERT_EQ(p.levels.size(), 3u);
  EXPECT_EQ(p.levels[1].width(), 50);
  EXPECT_EQ(p.levels[2].width(), 25);
  EXPECT_EQ(p.levels[2].height(), 25);
  EXPECT_THROW(build_pyramid(g, 0), ContractViolation);
  EXPECT_THROW(build_pyramid(g, 8), ContractViolation);
}

TEST(Match, ZeroPerturbationReturnsInit) {
  // Wall faces through cell centres: the map holds each surface exactly
  // where the scan puts it.
  const auto room = room_fixture::world(0.0, {0.05, 0.05});
  const auto pyr = build_pyramid(room_fixture::map(room), 3);
  for (const auto& p : room_fixture::poses(0.0, room.start)) {
    const PoseEstimate truth{p.x, p.y, 0.0};
    const auto scan = lidar::cast_scan(room, p, truth.theta, 12.0, lidar::NoiseModel{}, 0);
    const auto r = match_scan(pyr, scan, truth, {});
    EXPECT_EQ(r.pose.x, truth.x);
    EXPECT_EQ(r.pose.y, truth.y);
    EXPECT_EQ(r.pose.theta, truth.theta);
    EXPECT_FALSE(r.degenerate);
  }
}

TEST(Match, RecoversKnownPerturbationAtCellCentredWalls) {
  const auto room = room_fixture::world(0.0, {0.05, 0.05});
  const auto grid = room_fixture::map(room);
  const auto pyr = build_pyramid(grid, 3);
  const PoseEstimate init{0.55, 0.35, 0.0};
  const PoseEstimate truth{init.x + 0.3, init.y, init.theta + deg2rad(5.0)};
  const auto scan = lidar::cast_scan(room, {truth.x, truth.y}, truth.theta, 12.0, lidar::NoiseModel{}, 0);
  const auto r = match_scan(pyr, scan, init, {});
  EXPECT_LE(std::hypot(r.pose.x - truth.x, r.pose.y - truth.y), 0.5 * grid.resolution());
  EXPECT_LE(std::fabs(normalize_angle(r.pose.theta - truth.theta)), deg2rad(1.0));
}

// An axis-aligned face anywhere inside a cell produces the same map, so the
// position is only known to within that cell: half a cell per axis is the
// best any matcher can guarantee over arbitrary alignments.
TEST(Match, PerAxisErrorWithinHalfCellForAnyAlignment) {
  for (int k = 0; k < 10; ++k) {
    const double off = 0.01 * k;
    const auto room = room_fixture::world(0.0, {off, off});
    const auto grid = room_fixture::map(room);
    const auto pyr = build_pyramid(grid, 3);
    for (const auto& p : room_fixture::poses(0.0, room.start)) {
      for (const auto& d : {std::array{0.3, 0.0, 5.0}, std::array{-0.3, 0.0, -5.0}, std::array{0.0, 0.3, 5.0}}) {
        const PoseEstimate init{p.x, p.y, 0.0};
        const PoseEstimate truth{p.x + d[0], p.y + d[1], deg2rad(d[2])};
        const auto scan = lidar::cast_scan(room, {truth.x, truth.y}, truth.theta, 12.0, lidar::NoiseModel{}, 0);
        const auto r = match_scan(pyr, scan, init, {});
        EXPECT_LE(std::fabs(r.pose.x - truth.x), 0.5 * grid.resolution() + 1e-9) << off;
        EXPECT_LE(std::fabs(r.pose.y - truth.y), 0.5 * grid.resolution() + 1e-9) << off;
        EXPECT_LE(std::fabs(normalize_angle(r.pose.theta - truth.theta)), deg2rad(1.0)) << off;
      }
    }
  }
}

TEST(Match, StaysInsideSearchWindow) {
  const auto room = room_fixture::world();
  const auto pyr = build_pyramid(room_fixture::map(room), 3);
  const SearchWindow win{0.2, deg2rad(3.0)};
  const PoseEstimate init{0.0, 0.0, 0.0};
  // True pose far outside the window: the best in-window pose is returned.
  const auto scan = lidar::cast_scan(room, {1.0, -0.8}, deg2rad(20.0), 12.0, lidar::NoiseModel{}, 0);
  const auto r = match_scan(pyr, scan, init, win);
  EXPECT_LE(std::fabs(r.pose.x - init.x), win.linear + 1e-12);
  EXPECT_LE(std::fabs(r.pose.y - init.y), win.linear + 1e-12);
  EXPECT_LE(std::fabs(normalize_angle(r.pose.theta - init.theta)), win.angular + 1e-12);
}

TEST(Match, AllMaxRangeIsDegenerate) {
  const auto grid = room_fixture::map(room_fixture::world());
  lidar::RawScan s;
  s.ranges.fill(s.max_range);
  const PoseEstimate init{0.2, 0.1, 0.3};
  const auto r = match_scan(build_pyramid(grid, 3), s, init, {});
  EXPECT_TRUE(r.degenerate);
  EXPECT_EQ(r.pose.x, init.x);
  EXPECT_EQ(r.pose.y, init.y);
  EXPECT_EQ(r.pose.theta, init.theta);
}

TEST(Accuracy, RoomFromTenPoses) {
  const auto room = room_fixture::world();
  const auto grid = room_fixture::map(room);
  const auto acc = room_fixture::accuracy(grid, room);
  EXPECT_GE(acc.fraction(), 0.95) << acc.correct << " / " << acc.evaluated;
}

TEST(Corners, AxisAlignedRoom) {
  const auto room = room_fixture::world();
  const auto grid = room_fixture::map(room);
  const auto c = extract_corners(grid);
  // Inner wall faces at +-4, +-3: the occupied surface cells' centres sit
  // half a cell beyond them.
  const double h = 0.5 * grid.resolution();
  const Vec2 ll = grid.to_pixel({-4.0 - h, -3.0 - h}), ur = grid.to_pixel({4.0 + h, 3.0 + h});
  EXPECT_NEAR(c.lower_left.x, ll.x, 1.0);
  EXPECT_NEAR(c.lower_left.y, ll.y, 1.0);
  EXPECT_NEAR(c.upper_right.x, ur.x, 1.0);
  EXPECT_NEAR(c.upper_right.y, ur.y, 1.0);
  EXPECT_NEAR(c.upper_left.x, ll.x, 1.0);
  EXPECT_NEAR(c.upper_left.y, ur.y, 1.0);
  EXPECT_NEAR(c.lower_right.x, ur.x, 1.0);
  EXPECT_NEAR(c.lower_right.y, ll.y, 1.0);
  EXPECT_NEAR(c.angle, 0.0, 1e-9);
}

TEST(Corners, SingleCellRejected) {
  OccupancyGrid g(20, 20, 0.1, {});
  g.set(5, 5, 4.0);
  EXPECT_THROW(extract_corners(g), ContractViolation);
}

TEST(Corners, RotatedRoomKeepsArea) {
  const auto straight = extract_corners(room_fixture::map(room_fixture::world()));
  const double theta = deg2rad(10.0);
  const auto rotated_world = room_fixture::world(theta);
  const auto c = extract_corners(room_fixture::map(rotated_world));
  EXPECT_NEAR(c.area() / straight.area(), 1.0, 0.03);
  EXPECT_NEAR(c.angle, theta, deg2rad(1.0));
}

TEST(Rotation, AxisAlignedIsZero) {
  const auto r = estimate_rotation(room_fixture::map(room_fixture::world()));
  EXPECT_NEAR(r.theta, 0.0, deg2rad(0.5));
  EXPECT_FALSE(r.fallback);
}

TEST(Rotation, TenDegrees) {
  const auto r = estimate_rotation(room_fixture::map(room_fixture::world(deg2rad(10.0))));
  EXPECT_NEAR(r.theta, deg2rad(10.0), deg2rad(1.0));
}

TEST(Rotation, DegenerateWeightsPickFirstLine) {
  const auto grid = room_fixture::map(room_fixture::world(deg2rad(7.0)));
  const auto all = estimate_rotation(grid);
  const auto first = estimate_rotation(grid, {1.0, 0.0, 0.0});
  ASSERT_FALSE(first.line_angles.empty());
  EXPECT_DOUBLE_EQ(first.theta, first.line_angles[0]);
  EXPECT_EQ(first.line_angles, all.line_angles);
  EXPECT_THROW(estimate_rotation(grid, {0.0, 0.0, 0.0}), ContractViolation);
}

TEST(MapIo, PgmAndSidecarRoundTrip) {
  const auto grid = room_fixture::map(room_fixture::world());
  const auto dir = std::filesystem::temp_directory_path() / "uavnav_map_io_test";
  std::filesystem::create_directories(dir);
  write_pgm(grid, (dir / "m.pgm").string());
  MapSidecar s;
  s.image = "m.pgm";
  s.resolution = grid.resolution();
  s.origin = grid.origin();
  s.width = grid.width();
  s.height = grid.height();
  s.corners = extract_corners(grid);
  s.world_bounds = WorldBounds{-6, 6, -5, 5};
  write_sidecar(s, (dir / "m.json").string());
  const auto loaded = load_map((dir / "m.pgm").string());
  ASSERT_EQ(loaded.grid.width(), grid.width());
  ASSERT_EQ(loaded.grid.height(), grid.height());
  for (int j = 0; j < grid.height(); ++j)
    for (int i = 0; i < grid.width(); ++i) ASSERT_EQ(loaded.grid.classify(i, j), grid.classify(i, j));
  EXPECT_EQ(loaded.sidecar.world_bounds->y_max, 5.0);
  EXPECT_EQ(encode_pgm(loaded.grid), encode_pgm(grid));
  std::filesystem::remove_all(dir);
}

TEST(Survey, PosesKeepClearance) {
  const auto room = room_fixture::world();
  const auto poses = survey_poses(room, 1.5, 0.5);
  EXPECT_FALSE(poses.empty());
  for (const auto& p : poses) EXPECT_GE(sim::nearest_obstacle_distance(p, room), 0.5);
}
