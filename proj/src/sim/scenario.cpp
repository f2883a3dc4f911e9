#include "uavnav/sim/scenario.hpp"

#include <fstream>
#include <random>

namespace uavnav::sim {
namespace {

constexpr const char* kScenarioSchema = "uavnav.scenario/1";

void add_fence(WorldConfig& w, double thickness) {
  const double cx = 0.5 * (w.x_min + w.x_max);
  const double cy = 0.5 * (w.y_min + w.y_max);
  const double hx = 0.5 * (w.x_max - w.x_min);
  const double hy = 0.5 * (w.y_max - w.y_min);
  const double t = 0.5 * thickness;
  w.obstacles.push_back(Obstacle::rectangle({cx, w.y_max - t}, {hx, t}));
  w.obstacles.push_back(Obstacle::rectangle({cx, w.y_min + t}, {hx, t}));
  w.obstacles.push_back(Obstacle::rectangle({w.x_min + t, cy}, {t, hy}));
  w.obstacles.push_back(Obstacle::rectangle({w.x_max - t, cy}, {t, hy}));
}

Vec2 sample_target(std::mt19937_64& rng, const FarmlandParams& p, Vec2 start,
                   const WorldConfig& w) {
  std::uniform_real_distribution<double> coord(-p.target_range, p.target_range);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const Vec2 t{coord(rng), coord(rng)};
    if (distance(t, start) <= p.target_exclusion) continue;
    if (nearest_obstacle_distance(t, w) <= p.target_clearance) continue;
    return t;
  }
  throw ContractViolation("scenario: could not place a target");
}

void place_bars(std::mt19937_64& rng, const FarmlandParams& p, WorldConfig& w) {
  std::uniform_int_distribution<int> count(p.min_bars, p.max_bars);
  std::uniform_real_distribution<double> center(-p.bar_center_range, p.bar_center_range);
  std::uniform_real_distribution<double> length(p.bar_length_min, p.bar_length_max);
  std::uniform_real_distribution<double> heading(0.0, M_PI);
  const int n = count(rng);
  for (int placed = 0, attempt = 0; placed < n && attempt < 1000; ++attempt) {
    const Vec2 c{center(rng), center(rng)};
    const double len = length(rng);
    const double th = heading(rng);
    const Vec2 half = Vec2{std::cos(th), std::sin(th)} * (0.5 * len);
    const Obstacle bar = Obstacle::bar(c - half, c + half, p.bar_thickness);
    WorldConfig probe;
    probe.obstacles = {bar};
    if (nearest_obstacle_distance(w.start, probe) <= p.start_clearance) continue;
    if (nearest_obstacle_distance(w.target, probe) <= p.target_clearance) continue;
    w.obstacles.push_back(bar);
    ++placed;
  }
}

Vec2 read_vec2(const nlohmann::json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ConfigError("scenario." + field + ": expected [x, y]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

double read_number(const nlohmann::json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw ConfigError("scenario." + where + key + ": missing or not a number");
  }
  return j.at(key).get<double>();
}

}  // namespace

ScenarioTemplate parse_template(std::string_view name) {
  if (name == "farmland") return ScenarioTemplate::Farmland;
  if (name == "corridor") return ScenarioTemplate::Corridor;
  if (name == "empty") return ScenarioTemplate::Empty;
  throw ConfigError("template: unknown scenario template '" + std::string(name) + "'");
}

const char* to_string(ScenarioTemplate t) {
  switch (t) {
    case ScenarioTemplate::Farmland: return "farmland";
    case ScenarioTemplate::Corridor: return "corridor";
    case ScenarioTemplate::Empty: return "empty";
  }
  return "unknown";
}

WorldConfig spawn_scenario(std::uint64_t seed, ScenarioTemplate tmpl, const FarmlandParams& params) {
  std::mt19937_64 rng(derive_seed(seed, "sim-world/scenario"));
  WorldConfig w;
  w.x_min = w.y_min = -params.half_size;
  w.x_max = w.y_max = params.half_size;
  w.rng_seed = seed;
  w.col_threshold = params.col_threshold;
  w.template_name = to_string(tmpl);
  w.start = {0.0, 0.0};

  switch (tmpl) {
    case ScenarioTemplate::Empty:
      w.target = sample_target(rng, params, w.start, w);
      break;
    case ScenarioTemplate::Corridor: {
      w.obstacles.push_back(Obstacle::rectangle({0.0, 3.15}, {15.0, 0.15}));
      w.obstacles.push_back(Obstacle::rectangle({0.0, -3.15}, {15.0, 0.15}));
      std::uniform_real_distribution<double> along(8.0, params.target_range);
      w.target = {along(rng), 0.0};
      break;
    }
    case ScenarioTemplate::Farmland: {
      add_fence(w, 0.3);
      // Landmarks sit outside the target range: the farm house, the
      // inspection tower and a shed.
      w.obstacles.push_back(Obstacle::rectangle({-8.0, -16.0}, {2.5, 1.5}));
      w.obstacles.push_back(Obstacle::rectangle({16.0, 16.0}, {1.0, 1.0}));
      w.obstacles.push_back(Obstacle::rectangle({-16.0, 8.0}, {1.5, 2.5}));
      w.target = sample_target(rng, params, w.start, w);
      place_bars(rng, params, w);
      break;
    }
  }
  w.validate();
  return w;
}

nlohmann::json scenario_to_json(const WorldConfig& w) {
  nlohmann::json obstacles = nlohmann::json::array();
  for (const auto& o : w.obstacles) {
    if (o.kind == ObstacleKind::Rectangle) {
      obstacles.push_back({{"kind", "rectangle"},
                           {"center", {o.center.x, o.center.y}},
                           {"half_extents", {o.half_extents.x, o.half_extents.y}}});
    } else {
      obstacles.push_back({{"kind", "bar"},
                           {"a", {o.a.x, o.a.y}},
                           {"b", {o.b.x, o.b.y}},
                           {"thickness", o.thickness}});
    }
  }
  return {{"schema", kScenarioSchema},
          {"template", w.template_name},
          {"seed", w.rng_seed},
          {"bounds", {{"x_min", w.x_min}, {"x_max", w.x_max}, {"y_min", w.y_min}, {"y_max", w.y_max}}},
          {"altitude", w.altitude},
          {"col_threshold", w.col_threshold},
          {"reset_lag", {{"enabled", w.reset_lag_enabled}, {"step", w.reset_lag_step}}},
          {"start", {w.start.x, w.start.y}},
          {"target", {w.target.x, w.target.y}},
          {"obstacles", obstacles}};
}

WorldConfig scenario_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("scenario: expected a JSON object");
  if (j.value("schema", std::string{}) != kScenarioSchema) {
    throw ConfigError(std::string("scenario.schema: expected '") + kScenarioSchema + "'");
  }
  WorldConfig w;
  if (!j.contains("bounds") || !j["bounds"].is_object()) throw ConfigError("scenario.bounds: missing");
  const auto& b = j["bounds"];
  w.x_min = read_number(b, "x_min", "bounds.");
  w.x_max = read_number(b, "x_max", "bounds.");
  w.y_min = read_number(b, "y_min", "bounds.");
  w.y_max = read_number(b, "y_max", "bounds.");
  w.altitude = j.contains("altitude") ? read_number(j, "altitude", "") : kDefaultAltitude;
  w.col_threshold = j.contains("col_threshold") ? read_number(j, "col_threshold", "") : 1.0;
  if (j.contains("reset_lag")) {
    const auto& r = j["reset_lag"];
    w.reset_lag_enabled = r.value("enabled", true);
    w.reset_lag_step = r.contains("step") ? read_number(r, "step", "reset_lag.") : 1.0;
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw ConfigError("scenario.seed: expected unsigned integer");
    w.rng_seed = j["seed"].get<std::uint64_t>();
  }
  w.template_name = j.value("template", std::string{"custom"});
  if (j.contains("start")) w.start = read_vec2(j["start"], "start");
  if (j.contains("target")) w.target = read_vec2(j["target"], "target");
  if (j.contains("obstacles")) {
    if (!j["obstacles"].is_array()) throw ConfigError("scenario.obstacles: expected array");
    std::size_t i = 0;
    for (const auto& o : j["obstacles"]) {
      const std::string where = "obstacles[" + std::to_string(i++) + "]";
      const std::string kind = o.value("kind", std::string{});
      try {
        if (kind == "rectangle") {
          w.obstacles.push_back(Obstacle::rectangle(read_vec2(o.value("center", nlohmann::json{}), where + ".center"),
                                                    read_vec2(o.value("half_extents", nlohmann::json{}), where + ".half_extents")));
        } else if (kind == "bar") {
          w.obstacles.push_back(Obstacle::bar(read_vec2(o.value("a", nlohmann::json{}), where + ".a"),
                                              read_vec2(o.value("b", nlohmann::json{}), where + ".b"),
                                              read_number(o, "thickness", where + ".")));
        } else {
          throw ConfigError("scenario." + where + ".kind: expected 'rectangle' or 'bar'");
        }
      } catch (const ContractViolation& e) {
        throw ConfigError("scenario." + where + ": " + e.what());
      }
    }
  }
  try {
    w.validate();
  } catch (const ContractViolation& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
  return w;
}

void save_scenario(const WorldConfig& world, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write scenario file " + path);
  out << scenario_to_json(world).dump(2) << '\n';
  if (!out) throw IoError("failed writing scenario file " + path);
}

WorldConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read scenario file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("scenario: " + path + " is not valid JSON: " + e.what());
  }
  return scenario_from_json(j);
}

}  // namespace uavnav::sim
