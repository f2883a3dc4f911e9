#include "uavnav/mapping/scan_matcher.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <tuple>

namespace uavnav::mapping {
namespace {

OccupancyGrid downsample(const OccupancyGrid& g) {
  const int w = (g.width() + 1) / 2;
  const int h = (g.height() + 1) / 2;
  OccupancyGrid out(w, h, 2.0 * g.resolution(), g.origin(), g.params());
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i < w; ++i) {
      double m = g.params().min;
      for (int dj = 0; dj < 2; ++dj) {
        for (int di = 0; di < 2; ++di) {
          const int si = 2 * i + di;
          const int sj = 2 * j + dj;
          if (g.in_bounds(si, sj)) m = std::max(m, g.at(si, sj));
        }
      }
      out.set(i, j, m);
    }
  }
  return out;
}

double probability(double log_odds) { return 1.0 / (1.0 + std::exp(-log_odds)); }

struct Candidate {
  double dx = 0.0;
  double dy = 0.0;
  double dth = 0.0;
  double score = -1.0;

  double magnitude() const { return std::sqrt(dx * dx + dy * dy + dth * dth); }
};

bool better(const Candidate& c, const Candidate& best) {
  constexpr double kTie = 1e-9;
  if (c.score > best.score + kTie) return true;
  if (c.score < best.score - kTie) return false;
  const double mc = c.magnitude();
  const double mb = best.magnitude();
  if (mc < mb - 1e-12) return true;
  if (mc > mb + 1e-12) return false;
  return std::tie(c.dx, c.dy, c.dth) < std::tie(best.dx, best.dy, best.dth);
}

// Symmetric offsets {-n*step .. n*step} clipped to [-limit, limit], always
// including zero.
std::vector<double> axis_offsets(double center, double step, int n, double limit) {
  std::vector<double> out;
  for (int k = -n; k <= n; ++k) {
    const double v = center + k * step;
    if (std::abs(v) <= limit + 1e-12) out.push_back(std::clamp(v, -limit, limit));
  }
  if (out.empty()) out.push_back(std::clamp(center, -limit, limit));
  return out;
}

}  // namespace

MapPyramid build_pyramid(const OccupancyGrid& grid, int n_levels) {
  const int min_dim = std::min(grid.width(), grid.height());
  const int max_levels = static_cast<int>(std::bit_width(static_cast<unsigned>(min_dim))) - 1;
  if (n_levels < 1) throw ContractViolation("build_pyramid: n_levels must be >= 1");
  if (n_levels > max_levels) {
    throw ContractViolation("build_pyramid: n_levels " + std::to_string(n_levels) +
                            " exceeds log2 of the smallest grid dimension");
  }
  MapPyramid p;
  p.levels.push_back(grid);
  for (int k = 1; k < n_levels; ++k) p.levels.push_back(downsample(p.levels.back()));
  return p;
}

double scan_score(const OccupancyGrid& grid, const lidar::RawScan& scan, const PoseEstimate& pose) {
  double total = 0.0;
  const auto sample = [&](int i, int j) {
    return grid.in_bounds(i, j) ? probability(grid.at(i, j)) : 0.5;
  };
  for (int d = 0; d < lidar::kBeams; ++d) {
    const double r = scan.ranges[static_cast<std::size_t>(d)];
    if (r >= scan.max_range) continue;
    const double bearing = pose.theta + deg2rad(d);
    const Vec2 end{pose.x + r * std::cos(bearing), pose.y + r * std::sin(bearing)};
    const Vec2 px = grid.to_pixel(end);
    const int i0 = static_cast<int>(std::floor(px.x));
    const int j0 = static_cast<int>(std::floor(px.y));
    const double fx = px.x - i0;
    const double fy = px.y - j0;
    total += (1 - fx) * (1 - fy) * sample(i0, j0) + fx * (1 - fy) * sample(i0 + 1, j0) +
             (1 - fx) * fy * sample(i0, j0 + 1) + fx * fy * sample(i0 + 1, j0 + 1);
  }
  return total;
}

MatchResult match_scan(const MapPyramid& pyramid, const lidar::RawScan& scan,
                       const PoseEstimate& init, const SearchWindow& window) {
  if (pyramid.levels.empty()) throw ContractViolation("match_scan: empty pyramid");
  std::vector<double> valid;
  for (double r : scan.ranges) {
    if (r < scan.max_range) valid.push_back(r);
  }
  if (valid.empty()) return {init, 0.0, true};
  std::nth_element(valid.begin(), valid.begin() + static_cast<long>(valid.size() / 2), valid.end());
  // Angular step chosen so a typical endpoint moves about one cell.
  const double typical_range = std::max(1.0, valid[valid.size() / 2]);

  const auto evaluate = [&](const OccupancyGrid& g, Candidate& c) {
    c.score = scan_score(g, scan, {init.x + c.dx, init.y + c.dy, init.theta + c.dth});
  };

  Candidate best;
  bool first = true;
  const auto search = [&](const OccupancyGrid& g, double lin_step, double ang_step, int n_lin,
                          int n_ang, bool whole_window) {
    const Candidate center = first ? Candidate{} : best;
    const auto xs = whole_window ? axis_offsets(0.0, lin_step, n_lin, window.linear)
                                 : axis_offsets(center.dx, lin_step, n_lin, window.linear);
    const auto ys = whole_window ? axis_offsets(0.0, lin_step, n_lin, window.linear)
                                 : axis_offsets(center.dy, lin_step, n_lin, window.linear);
    const auto ts = whole_window ? axis_offsets(0.0, ang_step, n_ang, window.angular)
                                 : axis_offsets(center.dth, ang_step, n_ang, window.angular);
    Candidate level_best;
    bool have = false;
    for (double dx : xs) {
      for (double dy : ys) {
        for (double dt : ts) {
          Candidate c{dx, dy, dt};
          evaluate(g, c);
          if (!have || better(c, level_best)) {
            level_best = c;
            have = true;
          }
        }
      }
    }
    best = level_best;
    first = false;
  };

  const int top = static_cast<int>(pyramid.levels.size()) - 1;
  for (int level = top; level >= 0; --level) {
    const OccupancyGrid& g = pyramid.levels[static_cast<std::size_t>(level)];
    const double lin = g.resolution();
    const double ang = lin / typical_range;
    if (level == top) {
      const int n_lin = static_cast<int>(std::ceil(window.linear / lin));
      const int n_ang = static_cast<int>(std::ceil(window.angular / ang));
      search(g, lin, ang, n_lin, n_ang, true);
    } else {
      search(g, lin, ang, 2, 2, false);
    }
  }
  const OccupancyGrid& fine = pyramid.levels.front();
  for (double f : {0.5, 0.25}) {
    const double lin = fine.resolution() * f;
    search(fine, lin, lin / typical_range, 2, 2, false);
  }
  return {{init.x + best.dx, init.y + best.dy, normalize_angle(init.theta + best.dth)},
          best.score,
          false};
}

}  // namespace uavnav::mapping
