#include "uavnav/mapping/map_geometry.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace uavnav::mapping {
namespace {

std::vector<Vec2> occupied_points(const OccupancyGrid& grid) {
  std::vector<Vec2> pts;
  for (int j = 0; j < grid.height(); ++j) {
    for (int i = 0; i < grid.width(); ++i) {
      if (grid.is_occupied(i, j)) pts.push_back({static_cast<double>(i), static_cast<double>(j)});
    }
  }
  return pts;
}

// Andrew's monotone chain; counter-clockwise, no collinear points.
std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(),
            [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Vec2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Vec2& p : pts) {
    while (k >= 2 && (hull[k - 1] - hull[k - 2]).cross(p - hull[k - 2]) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && (hull[k - 1] - hull[k - 2]).cross(pts[i] - hull[k - 2]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

struct Extent {
  double min_x, max_x, min_y, max_y;
  double area() const { return (max_x - min_x) * (max_y - min_y); }
};

Extent extent_in_frame(const std::vector<Vec2>& pts, double angle) {
  Extent e{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
           std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const Vec2& p : pts) {
    const Vec2 q = rotate(p, -angle);
    e.min_x = std::min(e.min_x, q.x);
    e.max_x = std::max(e.max_x, q.x);
    e.min_y = std::min(e.min_y, q.y);
    e.max_y = std::max(e.max_y, q.y);
  }
  return e;
}

double fold_quarter(double a) {
  // Into (-pi/4, pi/4].
  const double q = M_PI / 2.0;
  double r = a - q * std::round(a / q);
  if (r <= -q / 2.0) r += q;
  return r;
}

struct Line {
  Vec2 point;
  Vec2 direction;
  std::size_t support = 0;
};

Line fit_line(const std::vector<Vec2>& pts) {
  Vec2 c;
  for (const Vec2& p : pts) c = c + p;
  c = c * (1.0 / static_cast<double>(pts.size()));
  double sxx = 0, syy = 0, sxy = 0;
  for (const Vec2& p : pts) {
    const Vec2 d = p - c;
    sxx += d.x * d.x;
    syy += d.y * d.y;
    sxy += d.x * d.y;
  }
  const double angle = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
  return {c, {std::cos(angle), std::sin(angle)}, pts.size()};
}

double line_distance(const Line& l, Vec2 p) { return std::abs(l.direction.cross(p - l.point)); }

std::vector<Vec2> inliers(const std::vector<Vec2>& pts, const Line& l, double tol) {
  std::vector<Vec2> out;
  for (const Vec2& p : pts) {
    if (line_distance(l, p) <= tol) out.push_back(p);
  }
  return out;
}

// Strongest Hough line over `pts`, or support 0 when below min_votes.
Line hough_peak(const std::vector<Vec2>& pts, const LineDetectionParams& params, double rho_max) {
  const int n_theta = static_cast<int>(std::round(M_PI / params.angle_bin));
  const int n_rho = static_cast<int>(std::ceil(2.0 * rho_max)) + 1;
  std::vector<int> acc(static_cast<std::size_t>(n_theta * n_rho), 0);
  std::vector<double> cs(static_cast<std::size_t>(n_theta)), sn(static_cast<std::size_t>(n_theta));
  for (int t = 0; t < n_theta; ++t) {
    cs[static_cast<std::size_t>(t)] = std::cos(t * params.angle_bin);
    sn[static_cast<std::size_t>(t)] = std::sin(t * params.angle_bin);
  }
  for (const Vec2& p : pts) {
    for (int t = 0; t < n_theta; ++t) {
      const double rho = p.x * cs[static_cast<std::size_t>(t)] + p.y * sn[static_cast<std::size_t>(t)];
      const int r = static_cast<int>(std::lround(rho + rho_max));
      ++acc[static_cast<std::size_t>(t * n_rho + r)];
    }
  }
  const auto it = std::max_element(acc.begin(), acc.end());
  if (*it < params.min_votes) return {};
  const auto idx = static_cast<int>(it - acc.begin());
  const double theta = (idx / n_rho) * params.angle_bin;
  const double rho = (idx % n_rho) - rho_max;
  const Vec2 normal{std::cos(theta), std::sin(theta)};
  return {normal * rho, {-normal.y, normal.x}, static_cast<std::size_t>(*it)};
}

}  // namespace

double MapCorners::area() const {
  return distance(upper_left, upper_right) * distance(upper_right, lower_right);
}

MapCorners extract_corners(const OccupancyGrid& grid) {
  const auto pts = occupied_points(grid);
  if (pts.empty()) throw ContractViolation("extract_corners: grid has no occupied cells");
  const auto hull = convex_hull(pts);
  if (hull.size() < 3) throw ContractViolation("extract_corners: occupied cells span zero area");

  double best_angle = 0.0;
  double best_area = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < hull.size(); ++k) {
    const Vec2 e = hull[(k + 1) % hull.size()] - hull[k];
    const double angle = fold_quarter(std::atan2(e.y, e.x));
    const double area = extent_in_frame(hull, angle).area();
    if (area < best_area - 1e-9 || (std::abs(area - best_area) <= 1e-9 && std::abs(angle) < std::abs(best_angle))) {
      best_area = area;
      best_angle = angle;
    }
  }
  if (!(best_area > 1e-9)) throw ContractViolation("extract_corners: occupied cells span zero area");

  const Extent e = extent_in_frame(hull, best_angle);
  MapCorners c;
  c.angle = best_angle;
  c.upper_left = rotate({e.min_x, e.max_y}, best_angle);
  c.upper_right = rotate({e.max_x, e.max_y}, best_angle);
  c.lower_right = rotate({e.max_x, e.min_y}, best_angle);
  c.lower_left = rotate({e.min_x, e.min_y}, best_angle);
  return c;
}

RotationEstimate estimate_rotation(const OccupancyGrid& grid, const std::array<double, 3>& weights,
                                   const LineDetectionParams& params) {
  const double wsum = weights[0] + weights[1] + weights[2];
  if (!(wsum > 0.0) || weights[0] < 0 || weights[1] < 0 || weights[2] < 0) {
    throw ContractViolation("estimate_rotation: weights must be non-negative with positive sum");
  }
  std::vector<Vec2> remaining = occupied_points(grid);
  const double rho_max = std::hypot(grid.width(), grid.height());

  std::vector<double> angles;
  while (angles.size() < 3) {
    Line l = hough_peak(remaining, params, rho_max);
    if (l.support == 0) break;
    // Refit twice so the inlier band follows the fitted line.
    for (int pass = 0; pass < 2; ++pass) {
      const auto in = inliers(remaining, l, params.inlier_distance);
      if (in.size() < 2) break;
      l = fit_line(in);
    }
    const auto in = inliers(remaining, l, params.inlier_distance);
    if (static_cast<int>(in.size()) < params.min_votes) break;
    angles.push_back(fold_quarter(std::atan2(l.direction.y, l.direction.x)));
    std::erase_if(remaining, [&](Vec2 p) { return line_distance(l, p) <= params.inlier_distance; });
  }
  if (angles.empty()) throw ContractViolation("estimate_rotation: no boundary line found");

  RotationEstimate out;
  out.line_angles = angles;
  if (angles.size() < 3) {
    out.fallback = true;
    out.theta = angles.front();
    return out;
  }
  for (std::size_t k = 0; k < 3; ++k) out.theta += weights[k] / wsum * angles[k];
  return out;
}

}  // namespace uavnav::mapping
