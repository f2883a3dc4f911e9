#include <cmath>
#include <deque>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "uavnav/planner/rrt.hpp"
#include "uavnav/planner/transform.hpp"

using namespace uavnav;
using namespace uavnav::planner;
using mapping::OccupancyGrid;

namespace {

OccupancyGrid free_grid(int w, int h) {
  OccupancyGrid g(w, h, 0.1, {});
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < w; ++i) g.set(i, j, g.params().min);
  return g;
}

void block(OccupancyGrid& g, int i0, int j0, int i1, int j1) {
  for (int j = j0; j <= j1; ++j)
    for (int i = i0; i <= i1; ++i) g.set(i, j, g.params().max);
}

void expect_sound(const OccupancyGrid& g, const PlanResult& r, Vec2 start, Vec2 target, const RRTConfig& cfg) {
  ASSERT_TRUE(r.found());
  ASSERT_GE(r.path.size(), 2u);
  EXPECT_EQ(r.path.front(), start);
  EXPECT_EQ(r.path.back(), target);
  for (std::size_t k = 1; k < r.path.size(); ++k) {
    const double hop = distance(r.path[k - 1], r.path[k]);
    const double bound = k + 1 == r.path.size() ? std::max(cfg.step_size, cfg.test_range) : cfg.step_size;
    EXPECT_LE(hop, bound + 1e-9) << k;
    EXPECT_TRUE(oracle::segment_clear(g, r.path[k - 1], r.path[k], cfg.unknown_is_occupied)) << k;
  }
}

}  // namespace

TEST(Rrt, EmptyGridFindsPath) {
  const auto g = free_grid(40, 30);
  RRTConfig cfg;
  cfg.step_size = 5;
  cfg.test_range = 5;
  cfg.rng_seed = 1;
  const auto r = plan_rrt(g, {10, 10}, {20, 10}, cfg);
  expect_sound(g, r, {10, 10}, {20, 10}, cfg);
}

TEST(Rrt, TargetWithinTestRangeClosesOnFirstSteer) {
  const auto g = free_grid(40, 30);
  RRTConfig cfg;
  cfg.rng_seed = 9;
  const auto r = plan_rrt(g, {10, 10}, {13, 10}, cfg);
  ASSERT_TRUE(r.found());
  EXPECT_GE(r.path.size(), 2u);
  // Root, the first steered node, and the appended target (unless the
  // steer landed on the target itself).
  EXPECT_LE(r.tree.nodes.size(), 3u);
  EXPECT_EQ(r.path.back(), (Vec2{13, 10}));
}

TEST(Rrt, BlockedEndpointsAreErrors) {
  auto g = free_grid(30, 30);
  block(g, 5, 5, 6, 6);
  EXPECT_THROW(plan_rrt(g, {5, 5}, {20, 20}, {}), ContractViolation);
  EXPECT_THROW(plan_rrt(g, {20, 20}, {6, 5}, {}), ContractViolation);
  OccupancyGrid unknown(30, 30, 0.1, {});
  EXPECT_THROW(plan_rrt(unknown, {1, 1}, {20, 20}, {}), ContractViolation);
}

TEST(Rrt, WalledOffTargetIsNoPathNotError) {
  auto g = free_grid(40, 40);
  block(g, 25, 25, 35, 25);
  block(g, 25, 35, 35, 35);
  block(g, 25, 25, 25, 35);
  block(g, 35, 25, 35, 35);
  RRTConfig cfg;
  cfg.num_iterations = 400;
  const auto r = plan_rrt(g, {5, 5}, {30, 30}, cfg);
  EXPECT_FALSE(r.found());
  EXPECT_TRUE(r.path.empty());
  EXPECT_EQ(r.iterations, 400);
  EXPECT_GT(r.tree.nodes.size(), 1u);
}

TEST(Rrt, TreeEdgesWereFreeAtInsertion) {
  auto g = free_grid(60, 60);
  block(g, 28, 0, 31, 45);
  RRTConfig cfg;
  cfg.rng_seed = 4;
  const auto r = plan_rrt(g, {5, 5}, {55, 5}, cfg);
  expect_sound(g, r, {5, 5}, {55, 5}, cfg);
  ASSERT_EQ(r.tree.nodes.front().parent, -1);
  for (std::size_t k = 1; k < r.tree.nodes.size(); ++k) {
    const auto& n = r.tree.nodes[k];
    ASSERT_GE(n.parent, 0);
    ASSERT_LT(n.parent, static_cast<int>(k));
    EXPECT_TRUE(oracle::segment_clear(g, r.tree.nodes[static_cast<std::size_t>(n.parent)].position, n.position));
  }
}

TEST(Rrt, DeterministicPerSeed) {
  auto g = free_grid(60, 60);
  block(g, 20, 10, 40, 14);
  RRTConfig cfg;
  cfg.rng_seed = 77;
  const auto a = plan_rrt(g, {5, 5}, {50, 50}, cfg);
  const auto b = plan_rrt(g, {5, 5}, {50, 50}, cfg);
  EXPECT_EQ(a.path, b.path);
  EXPECT_EQ(tree_to_json(a.tree), tree_to_json(b.tree));
  cfg.rng_seed = 78;
  EXPECT_NE(plan_rrt(g, {5, 5}, {50, 50}, cfg).path, a.path);
}

TEST(Rrt, ConfigValidation) {
  RRTConfig c;
  c.step_size = 0;
  EXPECT_THROW(c.validate(), ContractViolation);
  c = {};
  c.num_iterations = 0;
  EXPECT_THROW(c.validate(), ContractViolation);
  c = {};
  c.test_range = -1;
  EXPECT_THROW(c.validate(), ContractViolation);
}

TEST(Rrt, TreeJsonShape) {
  RRTree t;
  t.nodes = {{{1, 2}, -1}, {{3, 4}, 0}, {{5, 6}, 1}};
  const auto j = tree_to_json(t);
  EXPECT_EQ(j["nodes"].size(), 3u);
  EXPECT_EQ(j["edges"], nlohmann::json::parse("[[1,0],[2,1]]"));
}

TEST(SegmentFree, Basics) {
  auto g = free_grid(30, 30);
  EXPECT_TRUE(segment_free(g, {4, 4}, {4, 4}));
  block(g, 15, 0, 15, 29);
  EXPECT_FALSE(segment_free(g, {5, 5}, {25, 8}));
  EXPECT_TRUE(segment_free(g, {5, 5}, {14, 20}));
  OccupancyGrid unknown(30, 30, 0.1, {});
  unknown.set(2, 2, unknown.params().min);
  EXPECT_FALSE(segment_free(unknown, {2, 2}, {10, 2}));
  EXPECT_TRUE(segment_free(unknown, {2, 2}, {10, 2}, false));
  EXPECT_THROW(segment_free(g, {-3, 2}, {4, 4}), ContractViolation);
}

TEST(SegmentFree, MatchesBruteForceOracle) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  OccupancyGrid g(40, 40, 0.1, {});
  for (int j = 0; j < 40; ++j)
    for (int i = 0; i < 40; ++i) {
      const double r = u(rng);
      g.set(i, j, r < 0.12 ? g.params().max : r < 0.2 ? 0.0 : g.params().min);
    }
  std::uniform_real_distribution<double> p(-0.49, 39.49);
  int blocked = 0;
  for (int k = 0; k < 3000; ++k) {
    const Vec2 a{p(rng), p(rng)};
    Vec2 b{p(rng), p(rng)};
    if (k % 2) b = a + (b - a) * 0.15;  // short segments exercise the free branch
    for (bool unk : {true, false}) {
      // Touching a blocked cell's closed square; corner-only contacts have
      // probability zero with random endpoints.
      bool oracle_free = true;
      for (int j = 0; j < 40 && oracle_free; ++j)
        for (int i = 0; i < 40 && oracle_free; ++i)
          if (oracle::blocked(g, i, j, unk) && oracle::segment_hits_square(a, b, i, j, 0.5)) oracle_free = false;
      ASSERT_EQ(segment_free(g, a, b, unk), oracle_free) << k;
      blocked += !oracle_free;
    }
  }
  EXPECT_GT(blocked, 500);
  EXPECT_LT(blocked, 5500);
}

namespace {

TransformConfig square_cfg(TransformMode mode) {
  TransformConfig c;
  c.corners.lower_left = {0, 0};
  c.corners.lower_right = {100, 0};
  c.corners.upper_right = {100, 100};
  c.corners.upper_left = {0, 100};
  c.x_min_g = -3.0;
  c.x_max_g = 7.0;
  c.y_min_g = 2.0;
  c.y_max_g = 12.0;
  c.mode = mode;
  return c;
}

}  // namespace

TEST(Transform, AffineCentre) {
  const auto c = square_cfg(TransformMode::Affine);
  const Vec2 w = transform_point({50, 50}, c);
  EXPECT_NEAR(w.x, 5.0 + c.x_min_g, 1e-12);
  EXPECT_NEAR(w.y, 5.0 + c.y_min_g, 1e-12);
}

TEST(Transform, LiteralAxisDoubles) {
  const auto c = square_cfg(TransformMode::Literal);
  const double ratio = 10.0 / 100.0;
  for (double xp : {0.0, 1.0, 37.5, 100.0}) {
    const Vec2 w = transform_point({xp, 0}, c);
    EXPECT_NEAR(w.x, 2.0 * xp * ratio, 1e-9);
    EXPECT_NEAR(w.y, 0.0, 1e-12);
  }
}

TEST(Transform, LiteralHandSubstitutionRotated) {
  auto c = square_cfg(TransformMode::Literal);
  c.theta = M_PI / 6;
  // p = (3, 4): r = 5, x_pr = 3 cos30 - 4 sin30, y_pr = 3 sin30 + 4 cos30.
  const double s3 = std::sqrt(3.0);
  const double xpr = 1.5 * s3 - 2.0, ypr = 1.5 + 2.0 * s3;
  const Vec2 w = transform_point({3, 4}, c);
  EXPECT_NEAR(w.x, (5.0 * s3 / 2 + xpr) * 0.1, 1e-9);
  EXPECT_NEAR(w.y, (5.0 * 0.5 + ypr) * 0.1, 1e-9);
}

TEST(Transform, OriginFixedPoint) {
  EXPECT_NEAR(transform_point({0, 0}, square_cfg(TransformMode::Literal)).x, 0.0, 1e-12);
  EXPECT_NEAR(transform_point({0, 0}, square_cfg(TransformMode::Literal)).y, 0.0, 1e-12);
  const Vec2 a = transform_point({0, 0}, square_cfg(TransformMode::Affine));
  EXPECT_NEAR(a.x, -3.0, 1e-12);
  EXPECT_NEAR(a.y, 2.0, 1e-12);
}

TEST(Transform, AffineRoundTripAndScaling) {
  auto c = square_cfg(TransformMode::Affine);
  c.corners.lower_left = {12, 7};
  c.corners.lower_right = {112, 17};
  c.corners.upper_right = {104, 97};
  c.corners.upper_left = {4, 87};
  c.theta = -0.0996687;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 120.0);
  for (int k = 0; k < 200; ++k) {
    const Vec2 p{u(rng), u(rng)};
    const Vec2 back = inverse_transform_point(transform_point(p, c), c);
    EXPECT_LE(std::hypot(back.x - p.x, back.y - p.y), 1e-9 * std::max(1.0, p.norm()));
  }
  auto wide = c;
  wide.x_max_g = c.x_min_g + 2.0 * (c.x_max_g - c.x_min_g);
  const Vec2 p{40, 30};
  EXPECT_NEAR(transform_point(p, wide).x - wide.x_min_g, 2.0 * (transform_point(p, c).x - c.x_min_g), 1e-9);
  EXPECT_THROW(inverse_transform_point({0, 0}, square_cfg(TransformMode::Literal)), ContractViolation);
}

TEST(Transform, DegenerateCornersRejected) {
  auto c = square_cfg(TransformMode::Affine);
  c.corners.upper_left = c.corners.upper_right;
  EXPECT_THROW(transform_point({1, 1}, c), ContractViolation);
  c = square_cfg(TransformMode::Affine);
  c.x_max_g = c.x_min_g;
  EXPECT_THROW(transform_point({1, 1}, c), ContractViolation);
}

TEST(TransformPath, ElementWise) {
  const auto c = square_cfg(TransformMode::Affine);
  EXPECT_TRUE(transform_path({}, c).waypoints.empty());
  const auto one = transform_path({{10, 20}}, c);
  ASSERT_EQ(one.waypoints.size(), 1u);
  EXPECT_EQ(one.waypoints[0], transform_point({10, 20}, c));
  const PixelPath five = {{1, 1}, {20, 5}, {40, 30}, {70, 60}, {99, 99}};
  for (auto mode : {TransformMode::Affine, TransformMode::Literal}) {
    auto cm = c;
    cm.mode = mode;
    const auto w = transform_path(five, cm);
    EXPECT_EQ(w.mode, mode);
    ASSERT_EQ(w.waypoints.size(), 5u);
    for (std::size_t k = 0; k < 5; ++k) EXPECT_EQ(w.waypoints[k], transform_point(five[k], cm));
  }
}

TEST(TransformMode, NamesRoundTrip) {
  for (auto m : {TransformMode::Affine, TransformMode::Literal}) EXPECT_EQ(parse_transform_mode(to_string(m)), m);
  EXPECT_THROW(parse_transform_mode("warp"), ConfigError);
}
