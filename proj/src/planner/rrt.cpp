#include "uavnav/planner/rrt.hpp"

#include <algorithm>
#include <random>

namespace uavnav::planner {

void RRTConfig::validate() const {
  if (num_iterations <= 0) throw ContractViolation("rrt: num_iterations must be > 0");
  if (!(step_size > 0.0)) throw ContractViolation("rrt: step_size must be > 0");
  if (!(test_range > 0.0)) throw ContractViolation("rrt: test_range must be > 0");
  if (goal_bias < 0.0 || goal_bias > 1.0) throw ContractViolation("rrt: goal_bias must be in [0, 1]");
}

bool cell_traversable(const mapping::OccupancyGrid& grid, int i, int j, bool unknown_is_occupied) {
  if (!grid.in_bounds(i, j)) return false;
  switch (grid.classify(i, j)) {
    case mapping::CellClass::Free: return true;
    case mapping::CellClass::Unknown: return !unknown_is_occupied;
    case mapping::CellClass::Occupied: return false;
  }
  return false;
}

bool segment_free(const mapping::OccupancyGrid& grid, Vec2 a, Vec2 b, bool unknown_is_occupied) {
  const auto inside = [&](Vec2 p) {
    return p.x >= -0.5 && p.y >= -0.5 && p.x < grid.width() - 0.5 && p.y < grid.height() - 0.5;
  };
  if (!inside(a) || !inside(b)) throw ContractViolation("segment_free: endpoint outside grid");
  const auto cells = mapping::trace_cells(grid, grid.to_world(a), grid.to_world(b));
  return std::all_of(cells.begin(), cells.end(), [&](const mapping::CellIndex& c) {
    return cell_traversable(grid, c.i, c.j, unknown_is_occupied);
  });
}

PlanResult plan_rrt(const mapping::OccupancyGrid& grid, Vec2 start, Vec2 target, const RRTConfig& cfg) {
  cfg.validate();
  const auto traversable_at = [&](Vec2 p) {
    return cell_traversable(grid, static_cast<int>(std::lround(p.x)), static_cast<int>(std::lround(p.y)),
                            cfg.unknown_is_occupied);
  };
  if (!traversable_at(start)) throw ContractViolation("plan_rrt: start cell is not free");
  if (!traversable_at(target)) throw ContractViolation("plan_rrt: target cell is not free");

  std::vector<mapping::CellIndex> free_cells;
  for (int j = 0; j < grid.height(); ++j) {
    for (int i = 0; i < grid.width(); ++i) {
      if (cell_traversable(grid, i, j, cfg.unknown_is_occupied)) free_cells.push_back({i, j});
    }
  }

  std::mt19937_64 rng(cfg.rng_seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, free_cells.size() - 1);

  PlanResult result;
  result.tree.nodes.push_back({start, -1});
  int goal_node = -1;
  for (int it = 0; it < cfg.num_iterations && goal_node < 0; ++it) {
    result.iterations = it + 1;
    const bool to_goal = unit(rng) < cfg.goal_bias;
    const std::size_t idx = pick(rng);
    const Vec2 sample = to_goal ? target
                                : Vec2{static_cast<double>(free_cells[idx].i),
                                       static_cast<double>(free_cells[idx].j)};

    // Nearest node; the candidate cache is rebuilt every iteration.
    int nearest = 0;
    double best = distance(result.tree.nodes[0].position, sample);
    for (std::size_t k = 1; k < result.tree.nodes.size(); ++k) {
      const double d = distance(result.tree.nodes[k].position, sample);
      if (d < best) {
        best = d;
        nearest = static_cast<int>(k);
      }
    }
    if (best == 0.0) continue;
    const Vec2 from = result.tree.nodes[static_cast<std::size_t>(nearest)].position;
    const Vec2 fresh = best <= cfg.step_size ? sample : from + (sample - from) * (cfg.step_size / best);
    if (!segment_free(grid, from, fresh, cfg.unknown_is_occupied)) continue;
    result.tree.nodes.push_back({fresh, nearest});
    const int fresh_idx = static_cast<int>(result.tree.nodes.size()) - 1;
    if (distance(fresh, target) <= cfg.test_range &&
        segment_free(grid, fresh, target, cfg.unknown_is_occupied)) {
      if (fresh == target) {
        goal_node = fresh_idx;
      } else {
        result.tree.nodes.push_back({target, fresh_idx});
        goal_node = static_cast<int>(result.tree.nodes.size()) - 1;
      }
    }
  }
  if (goal_node < 0) return result;

  for (int k = goal_node; k >= 0; k = result.tree.nodes[static_cast<std::size_t>(k)].parent) {
    result.path.push_back(result.tree.nodes[static_cast<std::size_t>(k)].position);
  }
  std::reverse(result.path.begin(), result.path.end());
  result.status = PlanStatus::Found;
  return result;
}

nlohmann::json tree_to_json(const RRTree& tree) {
  nlohmann::json nodes = nlohmann::json::array();
  nlohmann::json edges = nlohmann::json::array();
  for (std::size_t k = 0; k < tree.nodes.size(); ++k) {
    nodes.push_back({tree.nodes[k].position.x, tree.nodes[k].position.y});
    if (tree.nodes[k].parent >= 0) edges.push_back({static_cast<int>(k), tree.nodes[k].parent});
  }
  return {{"nodes", nodes}, {"edges", edges}};
}

}  // namespace uavnav::planner
