#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "uavnav/mapping/occupancy_grid.hpp"
#include "uavnav/planner/rrt.hpp"
#include "uavnav/sim/world.hpp"

namespace uavnav::cli {

using Rgb = std::array<std::uint8_t, 3>;

/// Row-major RGB raster, row 0 at the top.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;

  Image(int w, int h, Rgb fill);
  void set(int x, int y, Rgb c);
  Rgb get(int x, int y) const;
  /// Line between pixel coordinates, clipped to the image.
  void line(double x0, double y0, double x1, double y1, Rgb c);
  void disk(double cx, double cy, double r, Rgb c);
};

/// Binary PPM (P6).
std::string encode_ppm(const Image& img);
void write_ppm(const Image& img, const std::string& path);

/// Map rendering with the RRT tree and path on top. Path and tree are in
/// grid pixel coordinates (j up).
Image render_plan(const mapping::OccupancyGrid& grid, const planner::RRTree& tree, const planner::PixelPath& path);

/// Top-down world rendering with a flown path (world metres).
Image render_world_path(const sim::WorldConfig& world, const std::vector<Vec2>& path, double pixels_per_metre);

}  // namespace uavnav::cli
