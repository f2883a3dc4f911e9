#include "uavnav/cli/config.hpp"

#include <fstream>
#include <functional>
#include <sstream>
#include <type_traits>
#include <variant>
#include <vector>

namespace uavnav::cli {

namespace {

static_assert(std::is_same_v<std::size_t, std::uint64_t>, "seed and size fields share one slot type");
using Slot = std::variant<double*, int*, bool*, std::uint64_t*, std::vector<int>*>;

struct Field {
  const char* name;
  Slot slot;
};

struct Section {
  const char* name;  // empty for top-level fields
  std::vector<Field> fields;
};

std::vector<Section> sections(rl::TrainingConfig& c) {
  auto& e = c.episode;
  auto& s = c.sensing;
  auto& r = c.reset;
  auto& t = c.topology;
  auto& f = c.farmland;
  return {
      {"",
       {{"master_seed", &c.master_seed},
        {"rolling_window", &c.rolling_window},
        {"updates_per_step", &c.updates_per_step},
        {"run_resets", &c.run_resets}}},
      {"episode",
       {{"n_eps", &e.n_eps},
        {"n_step", &e.n_step},
        {"batch_size", &e.batch_size},
        {"gamma", &e.gamma},
        {"f_u", &e.f_u},
        {"target_radius", &e.target_radius},
        {"limit_x", &e.limit_x},
        {"limit_y", &e.limit_y},
        {"col_threshold", &e.col_threshold},
        {"target_range", &e.target_range},
        {"target_exclusion", &e.target_exclusion},
        {"z_t", &e.z_t},
        {"memory_size", &e.memory_size},
        {"eps_max", &e.eps_max},
        {"eps_min", &e.eps_min},
        {"eps_decay", &e.eps_decay},
        {"terminal_mask", &e.terminal_mask}}},
      {"sensing",
       {{"noise_enabled", &s.noise.enabled},
        {"p_noise", &s.noise.p_noise},
        {"disturbance", &s.noise.disturbance},
        {"noise_min_range", &s.noise.min_range},
        {"det_range", &s.filter.det_range},
        {"vl_thr", &s.filter.vl_thr},
        {"r_thr", &s.filter.r_thr},
        {"p_thr", &s.filter.p_thr},
        {"max_range", &s.max_range},
        {"max_sense_polls", &s.max_sense_polls},
        {"velocity_sigma", &s.velocity_sigma},
        {"attitude_sigma", &s.attitude_sigma},
        {"attitude_coupled_noise", &s.attitude_coupled_noise},
        {"body_radius", &s.body_radius}}},
      {"reset",
       {{"a_thr", &r.a_thr},
        {"b_thr", &r.b_thr},
        {"offset_a", &r.offset_a},
        {"offset_b", &r.offset_b},
        {"soft_timeout", &r.soft_timeout},
        {"hard_timeout", &r.hard_timeout},
        {"stop_flag", &r.stop_flag},
        {"sign_preserving", &r.sign_preserving},
        {"arrive_radius", &r.arrive_radius},
        {"return_tolerance", &r.return_tolerance},
        {"return_timeout", &r.return_timeout}}},
      {"topology",
       {{"trunk", &t.trunk}, {"value_hidden", &t.value_hidden}, {"advantage_hidden", &t.advantage_hidden}}},
      {"adam",
       {{"lr", &c.adam.lr}, {"beta1", &c.adam.beta1}, {"beta2", &c.adam.beta2}, {"eps", &c.adam.eps}}},
      {"learner",
       {{"reward_scale", &c.learner.reward_scale},
        {"position_scale", &c.learner.scaling.position},
        {"distance_scale", &c.learner.scaling.distance}}},
      {"farmland",
       {{"half_size", &f.half_size},
        {"min_bars", &f.min_bars},
        {"max_bars", &f.max_bars},
        {"bar_thickness", &f.bar_thickness},
        {"bar_length_min", &f.bar_length_min},
        {"bar_length_max", &f.bar_length_max},
        {"bar_center_range", &f.bar_center_range},
        {"start_clearance", &f.start_clearance},
        {"target_clearance", &f.target_clearance}}},
  };
}

std::string qualified(const Section& s, const char* field) {
  return s.name[0] ? std::string(s.name) + "." + field : std::string(field);
}

void assign(const Slot& slot, const nlohmann::json& v, const std::string& name) {
  const auto fail = [&](const char* expected) { throw ConfigError(name + ": expected " + expected); };
  std::visit(
      [&](auto* p) {
        using T = std::remove_pointer_t<decltype(p)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!v.is_number()) fail("a number");
          *p = v.get<double>();
        } else if constexpr (std::is_same_v<T, bool>) {
          if (!v.is_boolean()) fail("true or false");
          *p = v.get<bool>();
        } else if constexpr (std::is_same_v<T, int>) {
          if (!v.is_number_integer()) fail("an integer");
          *p = v.get<int>();
        } else if constexpr (std::is_same_v<T, std::vector<int>>) {
          if (!v.is_array()) fail("an array of positive integers");
          std::vector<int> out;
          for (const auto& x : v) {
            if (!x.is_number_integer() || x.get<int>() <= 0) fail("an array of positive integers");
            out.push_back(x.get<int>());
          }
          *p = out;
        } else {
          if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
            fail("a non-negative integer");
          }
          *p = v.get<T>();
        }
      },
      slot);
}

}  // namespace

nlohmann::json training_config_to_json(const rl::TrainingConfig& cfg) {
  rl::TrainingConfig copy = cfg;
  nlohmann::json j = nlohmann::json::object();
  for (const auto& s : sections(copy)) {
    nlohmann::json& target = s.name[0] ? j[s.name] : j;
    for (const auto& f : s.fields) {
      std::visit([&](auto* p) { target[f.name] = *p; }, f.slot);
    }
  }
  return j;
}

void apply_training_overrides(rl::TrainingConfig& cfg, const nlohmann::json& overrides) {
  if (!overrides.is_object()) throw ConfigError("config: expected a JSON object at the top level");
  auto secs = sections(cfg);
  const auto find_field = [](Section& s, const std::string& key) -> Field* {
    for (auto& f : s.fields)
      if (key == f.name) return &f;
    return nullptr;
  };
  for (const auto& [key, value] : overrides.items()) {
    if (Field* f = find_field(secs.front(), key)) {
      assign(f->slot, value, key);
      continue;
    }
    Section* sec = nullptr;
    for (auto& s : secs)
      if (s.name[0] && key == s.name) sec = &s;
    if (!sec) throw ConfigError(key + ": unknown configuration key");
    if (!value.is_object()) throw ConfigError(key + ": expected an object");
    for (const auto& [sub, v] : value.items()) {
      Field* f = find_field(*sec, sub);
      if (!f) throw ConfigError(qualified(*sec, sub.c_str()) + ": unknown configuration key");
      assign(f->slot, v, qualified(*sec, sub.c_str()));
    }
  }
  cfg.validate();
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return nlohmann::json::parse(ss.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

}  // namespace uavnav::cli
