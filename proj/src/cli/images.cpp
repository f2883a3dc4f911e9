#include "uavnav/cli/images.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace uavnav::cli {

namespace {

constexpr Rgb kWhite{255, 255, 255};
constexpr Rgb kBlack{0, 0, 0};
constexpr Rgb kGray{160, 160, 160};
constexpr Rgb kRed{220, 30, 30};
constexpr Rgb kTreeBlue{140, 170, 230};
constexpr Rgb kGreen{30, 170, 60};
constexpr Rgb kBlue{30, 60, 220};
constexpr Rgb kObstacle{70, 70, 70};

bool inside(const std::array<Vec2, 4>& poly, Vec2 p) {
  for (std::size_t k = 0; k < poly.size(); ++k) {
    const Vec2 a = poly[k];
    const Vec2 b = poly[(k + 1) % poly.size()];
    if ((b - a).cross(p - a) < 0.0) return false;
  }
  return true;
}

}  // namespace

Image::Image(int w, int h, Rgb fill) : width(w), height(h), rgb(static_cast<std::size_t>(w) * h * 3) {
  if (w <= 0 || h <= 0) throw ContractViolation("image: dimensions must be positive");
  for (std::size_t k = 0; k < rgb.size(); k += 3) std::copy(fill.begin(), fill.end(), rgb.begin() + k);
}

void Image::set(int x, int y, Rgb c) {
  if (x < 0 || y < 0 || x >= width || y >= height) return;
  const auto k = (static_cast<std::size_t>(y) * width + x) * 3;
  std::copy(c.begin(), c.end(), rgb.begin() + k);
}

Rgb Image::get(int x, int y) const {
  const auto k = (static_cast<std::size_t>(y) * width + x) * 3;
  return {rgb[k], rgb[k + 1], rgb[k + 2]};
}

void Image::line(double x0, double y0, double x1, double y1, Rgb c) {
  const int n = static_cast<int>(std::ceil(std::max(std::abs(x1 - x0), std::abs(y1 - y0)))) + 1;
  for (int s = 0; s <= n; ++s) {
    const double t = static_cast<double>(s) / n;
    set(static_cast<int>(std::lround(x0 + t * (x1 - x0))), static_cast<int>(std::lround(y0 + t * (y1 - y0))), c);
  }
}

void Image::disk(double cx, double cy, double r, Rgb c) {
  for (int y = static_cast<int>(std::floor(cy - r)); y <= static_cast<int>(std::ceil(cy + r)); ++y)
    for (int x = static_cast<int>(std::floor(cx - r)); x <= static_cast<int>(std::ceil(cx + r)); ++x)
      if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r) set(x, y, c);
}

std::string encode_ppm(const Image& img) {
  std::string out = "P6\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(img.rgb.data()), img.rgb.size());
  return out;
}

void write_ppm(const Image& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  const std::string bytes = encode_ppm(img);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing " + path);
}

Image render_plan(const mapping::OccupancyGrid& grid, const planner::RRTree& tree, const planner::PixelPath& path) {
  Image img(grid.width(), grid.height(), kGray);
  const int h = grid.height();
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i < grid.width(); ++i) {
      switch (grid.classify(i, j)) {
        case mapping::CellClass::Occupied: img.set(i, h - 1 - j, kBlack); break;
        case mapping::CellClass::Free: img.set(i, h - 1 - j, kWhite); break;
        case mapping::CellClass::Unknown: break;
      }
    }
  }
  const auto flip = [h](Vec2 p) { return Vec2{p.x, h - 1 - p.y}; };
  for (const auto& n : tree.nodes) {
    if (n.parent < 0) continue;
    const Vec2 a = flip(n.position);
    const Vec2 b = flip(tree.nodes[static_cast<std::size_t>(n.parent)].position);
    img.line(a.x, a.y, b.x, b.y, kTreeBlue);
  }
  for (std::size_t k = 1; k < path.size(); ++k) {
    const Vec2 a = flip(path[k - 1]);
    const Vec2 b = flip(path[k]);
    img.line(a.x, a.y, b.x, b.y, kRed);
  }
  if (!tree.nodes.empty()) {
    const Vec2 s = flip(tree.nodes.front().position);
    img.disk(s.x, s.y, 3.0, kGreen);
  }
  if (!path.empty()) {
    const Vec2 t = flip(path.back());
    img.disk(t.x, t.y, 3.0, kBlue);
  }
  return img;
}

Image render_world_path(const sim::WorldConfig& world, const std::vector<Vec2>& path, double ppm) {
  if (!(ppm > 0.0)) throw ContractViolation("render: pixels per metre must be > 0");
  const int w = static_cast<int>(std::ceil((world.x_max - world.x_min) * ppm));
  const int h = static_cast<int>(std::ceil((world.y_max - world.y_min) * ppm));
  Image img(w, h, kWhite);
  const auto to_px = [&](Vec2 p) { return Vec2{(p.x - world.x_min) * ppm, (world.y_max - p.y) * ppm}; };
  std::vector<std::array<Vec2, 4>> polys;
  for (const auto& o : world.obstacles) polys.push_back(o.polygon());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const Vec2 p{world.x_min + (x + 0.5) / ppm, world.y_max - (y + 0.5) / ppm};
      for (const auto& poly : polys) {
        if (inside(poly, p)) {
          img.set(x, y, kObstacle);
          break;
        }
      }
    }
  }
  const Vec2 t = to_px(world.target);
  img.disk(t.x, t.y, 3.0 * ppm, Rgb{200, 235, 200});
  img.disk(t.x, t.y, 0.3 * ppm, kGreen);
  for (std::size_t k = 1; k < path.size(); ++k) {
    const Vec2 a = to_px(path[k - 1]);
    const Vec2 b = to_px(path[k]);
    img.line(a.x, a.y, b.x, b.y, kRed);
  }
  if (!path.empty()) {
    const Vec2 s = to_px(path.front());
    img.disk(s.x, s.y, 0.3 * ppm, kBlue);
  }
  return img;
}

}  // namespace uavnav::cli
