#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "uavnav/mapping/map_geometry.hpp"
#include "uavnav/mapping/occupancy_grid.hpp"

namespace uavnav::mapping {

inline constexpr unsigned char kPgmOccupied = 0;
inline constexpr unsigned char kPgmUnknown = 128;
inline constexpr unsigned char kPgmFree = 255;

/// Binary 8-bit PGM (P5). The first image row is the northmost grid row.
std::string encode_pgm(const OccupancyGrid& grid);
void write_pgm(const OccupancyGrid& grid, const std::string& path);

/// Reads P5 or P2. Dark pixels (< 100) load as occupied (log-odds max),
/// bright pixels (> 200) as free (log-odds min), the rest as unknown.
OccupancyGrid read_pgm(const std::string& path, double resolution = 0.1, Vec2 origin = {});

/// World extent covered by the map's outer boundary, in metres.
struct WorldBounds {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;
};

struct MapSidecar {
  std::string image;
  double resolution = 0.1;
  Vec2 origin;
  int width = 0;
  int height = 0;
  std::optional<MapCorners> corners;
  std::optional<RotationEstimate> rotation;
  std::optional<WorldBounds> world_bounds;
};

nlohmann::json sidecar_to_json(const MapSidecar& s);
MapSidecar sidecar_from_json(const nlohmann::json& j);
void write_sidecar(const MapSidecar& s, const std::string& path);
MapSidecar read_sidecar(const std::string& path);

/// Loads a map given either the PGM path (sidecar looked up as
/// <stem>.json next to it) or the sidecar path.
struct LoadedMap {
  OccupancyGrid grid;
  MapSidecar sidecar;
};
LoadedMap load_map(const std::string& path);

}  // namespace uavnav::mapping
