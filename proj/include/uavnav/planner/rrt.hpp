#pragma once

#include <cstdint>
#include <vector>

#include "json.hpp"

#include "uavnav/mapping/occupancy_grid.hpp"

namespace uavnav::planner {

struct RRTConfig {
  int num_iterations = 5000;
  /// Pixels.
  double step_size = 5.0;
  double test_range = 5.0;
  std::uint64_t rng_seed = 0;
  double goal_bias = 0.05;
  bool unknown_is_occupied = true;

  void validate() const;
};

struct TreeNode {
  Vec2 position;
  /// -1 for the root.
  int parent = -1;
};

struct RRTree {
  std::vector<TreeNode> nodes;
};

/// Pixel coordinates are (i, j) cell indices; cell centres sit on integers.
using PixelPath = std::vector<Vec2>;

enum class PlanStatus { Found, NoPath };

struct PlanResult {
  PlanStatus status = PlanStatus::NoPath;
  PixelPath path;
  RRTree tree;
  int iterations = 0;

  bool found() const { return status == PlanStatus::Found; }
};

/// True when no cell on the discrete line a -> b is blocked. Unknown cells
/// block unless `unknown_is_occupied` is false. Throws ContractViolation
/// when either endpoint is outside the grid.
bool segment_free(const mapping::OccupancyGrid& grid, Vec2 a, Vec2 b, bool unknown_is_occupied = true);

bool cell_traversable(const mapping::OccupancyGrid& grid, int i, int j, bool unknown_is_occupied = true);

/// Rapidly-exploring random tree from `start` to `target`. Each iteration
/// samples a traversable cell (or the target, with probability goal_bias),
/// steers from the nearest node (lowest index on ties) by at most
/// step_size, and keeps the new node only if the connecting segment is
/// free. A node within test_range of the target with a free segment to it
/// closes the path. Throws ContractViolation when start or target is
/// blocked; an exhausted budget yields PlanStatus::NoPath.
PlanResult plan_rrt(const mapping::OccupancyGrid& grid, Vec2 start, Vec2 target, const RRTConfig& cfg);

/// {"nodes": [[x, y], ...], "edges": [[child, parent], ...]}
nlohmann::json tree_to_json(const RRTree& tree);

}  // namespace uavnav::planner
