#pragma once

// Independent reference implementations used by unit and acceptance tests.
// None of these call into the code they check.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/distributions/chi_squared.hpp>

#include "uavnav/lidar/lidar.hpp"
#include "uavnav/mapping/occupancy_grid.hpp"
#include "uavnav/nn/dueling_net.hpp"
#include "uavnav/planner/rrt.hpp"
#include "uavnav/sim/world.hpp"

namespace oracle {

// ---------------------------------------------------------------------------
// Noise-elimination filter, a direct step-by-step restatement.

class FilterInterpreter {
 public:
  FilterInterpreter(double det_range, double vl_thr, double r_thr, double p_thr)
      : det_range_(det_range), vl_thr_(vl_thr), r_thr_(r_thr), p_thr_(p_thr) {}

  void arm() { detect_flag_ = true; }

  // Empty until the first accepted reading.
  std::optional<std::array<double, 8>> run(const std::array<double, 8>& pooled, double v_l, double roll,
                                          double pitch) {
    if (std::fabs(v_l) <= vl_thr_ && std::fabs(roll) <= r_thr_ && std::fabs(pitch) <= p_thr_ && detect_flag_) {
      std::array<double, 8> lidar_data = pooled;
      if (first_) {
        state_ = lidar_data;
        first_ = false;
      } else {
        for (int i = 0; i < 8; ++i) {
          if (lidar_data_t_[i] - lidar_data[i] >= 1.5) {
            index_list_[i] += 1;
            const double d_r = std::round(0.5 * det_range_);
            if (index_list_[i] >= d_r) {
              lidar_data[i] = det_range_ - d_r + 1;
              index_list_[i] -= static_cast<int>(det_range_ - d_r - 1);
            } else {
              lidar_data[i] = lidar_data_t_[i] - 1;
            }
          } else {
            if (index_list_[i] > 0) index_list_[i] -= 1;
          }
        }
        state_ = lidar_data;
      }
      lidar_data_t_ = pooled;
      detect_flag_ = false;
    }
    return state_;
  }

  const std::array<int, 8>& index_list() const { return index_list_; }

 private:
  double det_range_, vl_thr_, r_thr_, p_thr_;
  std::array<double, 8> lidar_data_t_{};
  std::array<int, 8> index_list_{};
  std::optional<std::array<double, 8>> state_;
  bool detect_flag_ = true;
  bool first_ = true;
};

// ---------------------------------------------------------------------------
// Segment vs. grid: a blocked cell collides when the pixel-space segment
// crosses the interior of its unit square (centre at integer coordinates).

inline bool segment_hits_square(uavnav::Vec2 a, uavnav::Vec2 b, double cx, double cy, double half) {
  double t0 = 0.0, t1 = 1.0;
  const double d[2] = {b.x - a.x, b.y - a.y};
  const double p0[2] = {a.x, a.y};
  const double lo[2] = {cx - half, cy - half};
  const double hi[2] = {cx + half, cy + half};
  for (int k = 0; k < 2; ++k) {
    if (std::fabs(d[k]) < 1e-15) {
      if (p0[k] <= lo[k] || p0[k] >= hi[k]) return false;
      continue;
    }
    double ta = (lo[k] - p0[k]) / d[k];
    double tb = (hi[k] - p0[k]) / d[k];
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 >= t1) return false;
  }
  return true;
}

inline bool blocked(const uavnav::mapping::OccupancyGrid& g, int i, int j, bool unknown_is_occupied) {
  const double v = g.at(i, j);
  if (v >= g.params().occupied_threshold) return true;
  if (v <= g.params().free_threshold) return false;
  return unknown_is_occupied;
}

inline bool segment_clear(const uavnav::mapping::OccupancyGrid& g, uavnav::Vec2 a, uavnav::Vec2 b,
                          bool unknown_is_occupied = true) {
  const int i0 = std::max(0, static_cast<int>(std::floor(std::min(a.x, b.x))) - 1);
  const int i1 = std::min(g.width() - 1, static_cast<int>(std::ceil(std::max(a.x, b.x))) + 1);
  const int j0 = std::max(0, static_cast<int>(std::floor(std::min(a.y, b.y))) - 1);
  const int j1 = std::min(g.height() - 1, static_cast<int>(std::ceil(std::max(a.y, b.y))) + 1);
  for (int j = j0; j <= j1; ++j)
    for (int i = i0; i <= i1; ++i)
      if (blocked(g, i, j, unknown_is_occupied) && segment_hits_square(a, b, i, j, 0.5 - 1e-9)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Central finite differences of L = sum(dq .* Q(states)) for every
// parameter. Parameters whose perturbation flips any ReLU are skipped since
// the loss has a kink there.

struct GradCheck {
  double max_rel_error = 0.0;
  int checked = 0;
  int skipped = 0;
};

inline std::vector<Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>> relu_pattern(
    const uavnav::nn::DuelingNet& net, const Eigen::MatrixXd& states) {
  const auto tape = net.record(states);
  std::vector<Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>> out;
  for (const auto& p : tape.pre) out.push_back(p.array() > 0.0);
  return out;
}

inline GradCheck finite_difference_check(uavnav::nn::DuelingNet net, const Eigen::MatrixXd& states,
                                         const Eigen::MatrixXd& dq, double eps = 1e-5, double floor = 1e-6) {
  const auto grads = net.backward(net.record(states), dq);
  const auto loss = [&](const uavnav::nn::DuelingNet& n) { return (n.forward_batch(states).array() * dq.array()).sum(); };
  GradCheck r;
  auto layers = net.layers();
  const auto probe = [&](double& param, double analytic) {
    const double saved = param;
    param = saved + eps;
    const double lp = loss(net);
    const auto mask_p = relu_pattern(net, states);
    param = saved - eps;
    const double lm = loss(net);
    const auto mask_m = relu_pattern(net, states);
    param = saved;
    bool kink = false;
    for (std::size_t k = 0; k < mask_p.size(); ++k) kink = kink || (mask_p[k] != mask_m[k]).any();
    if (kink) {
      ++r.skipped;
      return;
    }
    const double numeric = (lp - lm) / (2.0 * eps);
    const double rel = std::fabs(numeric - analytic) / std::max({std::fabs(numeric), std::fabs(analytic), floor});
    r.max_rel_error = std::max(r.max_rel_error, rel);
    ++r.checked;
  };
  for (std::size_t k = 0; k < layers.size(); ++k) {
    for (Eigen::Index c = 0; c < layers[k].weight.cols(); ++c)
      for (Eigen::Index row = 0; row < layers[k].weight.rows(); ++row) probe(layers[k].weight(row, c), grads.weight[k](row, c));
    for (Eigen::Index row = 0; row < layers[k].bias.size(); ++row) probe(layers[k].bias(row), grads.bias[k](row));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Pearson chi-square test of counts against equal expected frequencies.

inline double chi_square_uniform_pvalue(const std::vector<std::size_t>& counts) {
  double total = 0.0;
  for (auto c : counts) total += static_cast<double>(c);
  const double expected = total / static_cast<double>(counts.size());
  double stat = 0.0;
  for (auto c : counts) stat += (c - expected) * (c - expected) / expected;
  boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

// ---------------------------------------------------------------------------
// Rectangular room: four walls of the given thickness whose inner faces
// sit at +-half_w, +-half_h, centred on `center`.

inline uavnav::sim::WorldConfig room(double half_w, double half_h, double wall, uavnav::Vec2 center = {}) {
  using uavnav::sim::Obstacle;
  uavnav::sim::WorldConfig w;
  const double m = 2.0;
  w.x_min = center.x - half_w - wall - m;
  w.x_max = center.x + half_w + wall + m;
  w.y_min = center.y - half_h - wall - m;
  w.y_max = center.y + half_h + wall + m;
  const double hx = half_w + wall, hy = half_h + wall;
  w.obstacles = {
      Obstacle::rectangle({center.x, center.y + half_h + wall / 2}, {hx, wall / 2}),
      Obstacle::rectangle({center.x, center.y - half_h - wall / 2}, {hx, wall / 2}),
      Obstacle::rectangle({center.x + half_w + wall / 2, center.y}, {wall / 2, hy}),
      Obstacle::rectangle({center.x - half_w - wall / 2, center.y}, {wall / 2, hy}),
  };
  w.start = center;
  w.target = center;
  w.template_name = "room";
  return w;
}

// Geometric truth for axis-aligned rectangles: a point is occupied when it
// lies inside any of them.
inline bool point_in_rectangles(uavnav::Vec2 p, const uavnav::sim::WorldConfig& w) {
  for (const auto& o : w.obstacles) {
    if (std::fabs(p.x - o.center.x) <= o.half_extents.x && std::fabs(p.y - o.center.y) <= o.half_extents.y) return true;
  }
  return false;
}

}  // namespace oracle
