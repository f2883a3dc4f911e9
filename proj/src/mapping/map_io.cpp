#include "uavnav/mapping/map_io.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace uavnav::mapping {
namespace {

constexpr const char* kMapSchema = "uavnav.map/1";

// Next whitespace-delimited header token, skipping '#' comments.
std::string pgm_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {}
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  return tok;
}

nlohmann::json vec(Vec2 v) { return {v.x, v.y}; }

Vec2 read_vec(const nlohmann::json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) throw ConfigError("map sidecar." + field + ": expected [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

std::string encode_pgm(const OccupancyGrid& grid) {
  std::ostringstream out;
  out << "P5\n" << grid.width() << ' ' << grid.height() << "\n255\n";
  std::string row(static_cast<std::size_t>(grid.width()), '\0');
  for (int j = grid.height() - 1; j >= 0; --j) {
    for (int i = 0; i < grid.width(); ++i) {
      unsigned char v = kPgmUnknown;
      switch (grid.classify(i, j)) {
        case CellClass::Occupied: v = kPgmOccupied; break;
        case CellClass::Free: v = kPgmFree; break;
        case CellClass::Unknown: v = kPgmUnknown; break;
      }
      row[static_cast<std::size_t>(i)] = static_cast<char>(v);
    }
    out << row;
  }
  return out.str();
}

void write_pgm(const OccupancyGrid& grid, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << encode_pgm(grid);
  if (!out) throw IoError("failed writing " + path);
}

OccupancyGrid read_pgm(const std::string& path, double resolution, Vec2 origin) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  const std::string magic = pgm_token(in);
  if (magic != "P5" && magic != "P2") throw IoError(path + ": not a PGM file");
  int w = 0, h = 0, maxval = 0;
  try {
    w = std::stoi(pgm_token(in));
    h = std::stoi(pgm_token(in));
    maxval = std::stoi(pgm_token(in));
  } catch (const std::exception&) {
    throw IoError(path + ": malformed PGM header");
  }
  if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 255) throw IoError(path + ": unsupported PGM");
  OccupancyGrid grid(w, h, resolution, origin);
  for (int j = h - 1; j >= 0; --j) {
    for (int i = 0; i < w; ++i) {
      int v = 0;
      if (magic == "P5") {
        const int c = in.get();
        if (c == EOF) throw IoError(path + ": truncated PGM data");
        v = c;
      } else {
        const std::string tok = pgm_token(in);
        if (tok.empty()) throw IoError(path + ": truncated PGM data");
        v = std::stoi(tok);
      }
      const double scaled = 255.0 * v / maxval;
      if (scaled < 100.0) {
        grid.set(i, j, grid.params().max);
      } else if (scaled > 200.0) {
        grid.set(i, j, grid.params().min);
      }
    }
  }
  return grid;
}

nlohmann::json sidecar_to_json(const MapSidecar& s) {
  nlohmann::json j{{"schema", kMapSchema},
                   {"image", s.image},
                   {"resolution", s.resolution},
                   {"origin", vec(s.origin)},
                   {"width", s.width},
                   {"height", s.height},
                   {"corners", nullptr},
                   {"rotation", nullptr},
                   {"world_bounds", nullptr}};
  if (s.corners) {
    j["corners"] = {{"upper_left", vec(s.corners->upper_left)},
                    {"upper_right", vec(s.corners->upper_right)},
                    {"lower_right", vec(s.corners->lower_right)},
                    {"lower_left", vec(s.corners->lower_left)},
                    {"angle", s.corners->angle}};
  }
  if (s.rotation) {
    j["rotation"] = {{"theta", s.rotation->theta},
                     {"line_angles", s.rotation->line_angles},
                     {"fallback", s.rotation->fallback}};
  }
  if (s.world_bounds) {
    const auto& b = *s.world_bounds;
    j["world_bounds"] = {{"x_min", b.x_min}, {"x_max", b.x_max}, {"y_min", b.y_min}, {"y_max", b.y_max}};
  }
  return j;
}

MapSidecar sidecar_from_json(const nlohmann::json& j) {
  if (j.value("schema", std::string{}) != kMapSchema) {
    throw ConfigError(std::string("map sidecar.schema: expected '") + kMapSchema + "'");
  }
  MapSidecar s;
  try {
    s.image = j.at("image").get<std::string>();
    s.resolution = j.at("resolution").get<double>();
    s.origin = read_vec(j.at("origin"), "origin");
    s.width = j.at("width").get<int>();
    s.height = j.at("height").get<int>();
    if (!j.at("corners").is_null()) {
      const auto& c = j["corners"];
      s.corners = MapCorners{read_vec(c.at("upper_left"), "corners.upper_left"),
                             read_vec(c.at("upper_right"), "corners.upper_right"),
                             read_vec(c.at("lower_right"), "corners.lower_right"),
                             read_vec(c.at("lower_left"), "corners.lower_left"),
                             c.value("angle", 0.0)};
    }
    if (!j.at("rotation").is_null()) {
      const auto& r = j["rotation"];
      s.rotation = RotationEstimate{r.at("theta").get<double>(),
                                    r.value("line_angles", std::vector<double>{}),
                                    r.value("fallback", false)};
    }
    if (j.contains("world_bounds") && !j["world_bounds"].is_null()) {
      const auto& b = j["world_bounds"];
      s.world_bounds = WorldBounds{b.at("x_min").get<double>(), b.at("x_max").get<double>(),
                                   b.at("y_min").get<double>(), b.at("y_max").get<double>()};
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("map sidecar: ") + e.what());
  }
  if (!(s.resolution > 0.0)) throw ConfigError("map sidecar.resolution: must be > 0");
  return s;
}

void write_sidecar(const MapSidecar& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << sidecar_to_json(s).dump(2) << '\n';
  if (!out) throw IoError("failed writing " + path);
}

MapSidecar read_sidecar(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("map sidecar " + path + ": " + e.what());
  }
  return sidecar_from_json(j);
}

LoadedMap load_map(const std::string& path) {
  namespace fs = std::filesystem;
  const fs::path p(path);
  fs::path sidecar_path = p;
  fs::path image_path = p;
  if (p.extension() == ".json") {
    const MapSidecar s = read_sidecar(path);
    image_path = p.parent_path() / s.image;
  } else {
    sidecar_path.replace_extension(".json");
  }
  if (fs::exists(sidecar_path)) {
    MapSidecar s = read_sidecar(sidecar_path.string());
    OccupancyGrid g = read_pgm(image_path.string(), s.resolution, s.origin);
    return {std::move(g), std::move(s)};
  }
  OccupancyGrid g = read_pgm(image_path.string());
  MapSidecar s;
  s.image = image_path.filename().string();
  s.resolution = g.resolution();
  s.origin = g.origin();
  s.width = g.width();
  s.height = g.height();
  return {std::move(g), std::move(s)};
}

}  // namespace uavnav::mapping
