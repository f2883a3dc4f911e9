#include "uavnav/rl/reset.hpp"

#include <cmath>

namespace uavnav::rl {

void ResetConfig::validate() const {
  if (!(a_thr > 0.0 && b_thr > a_thr)) throw ConfigError("reset: need b_thr > a_thr > 0");
  if (!(offset_a > 0.0 && offset_b > offset_a)) throw ConfigError("reset: need offset_b > offset_a > 0");
  if (!(soft_timeout > 0.0 && hard_timeout > 0.0)) throw ConfigError("reset: timeouts must be > 0");
  if (!(arrive_radius > 0.0)) throw ConfigError("reset: arrive_radius must be > 0");
  if (!(return_tolerance > 0.0)) throw ConfigError("reset: return_tolerance must be > 0");
  if (!(return_timeout >= 0.0)) throw ConfigError("reset: return_timeout must be >= 0");
}

const char* to_string(ResetExit e) {
  switch (e) {
    case ResetExit::Arrived: return "arrived";
    case ResetExit::SoftTimeout: return "soft_timeout";
    case ResetExit::HardTimeout: return "hard_timeout";
  }
  return "unknown";
}

namespace {

double distance_to(const sim::DronePose& p, Vec2 home, double altitude) {
  const double dx = p.reported_x - home.x;
  const double dy = p.reported_y - home.y;
  const double dz = p.reported_z - altitude;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

/// Shrinks one staging coordinate (relative to home). Returns true when it
/// was pulled in, false when it should follow the reported pose instead.
bool stage(double& rel, const ResetConfig& cfg) {
  const double mag = std::abs(rel);
  if (mag < cfg.a_thr) return false;
  const double shrunk = mag - (mag >= cfg.b_thr ? cfg.offset_b : cfg.offset_a);
  rel = (cfg.sign_preserving && rel < 0.0) ? -shrunk : shrunk;
  return true;
}

void fly_home(ResetPlant& plant, const ResetConfig& cfg, Vec2 home, ResetReport& report) {
  const double t0 = plant.now();
  while (distance_to(plant.current(), home, plant.altitude()) > cfg.return_tolerance &&
         plant.now() - t0 < cfg.return_timeout) {
    plant.poll(home);
    ++report.polls;
  }
  report.return_seconds = plant.now() - t0;
}

}  // namespace

ResetReport reset_sequence(ResetPlant& plant, const ResetConfig& cfg, Vec2 home) {
  cfg.validate();
  ResetReport report;
  const double reset_op = plant.now();
  const double altitude = plant.altitude();
  // Staging coordinates are kept relative to the reset point.
  double x_t = plant.current().reported_x - home.x;
  double y_t = plant.current().reported_y - home.y;
  plant.command_reset(home);
  bool modified = true;
  std::optional<Vec2> start;

  while (true) {
    const sim::DronePose c = plant.current();
    if (distance_to(c, home, altitude) <= cfg.arrive_radius) {
      report.exit = ResetExit::Arrived;
      break;
    }
    const double x_c = c.reported_x - home.x;
    const double y_c = c.reported_y - home.y;
    if ((x_t != x_c || y_t != y_c) && modified) {
      if (stage(x_t, cfg)) {
        modified = false;
      } else {
        x_t = x_c;
      }
      if (stage(y_t, cfg)) {
        modified = false;
      } else {
        y_t = y_c;
      }
      start = Vec2{x_t + home.x, y_t + home.y};
      report.staging_points.push_back(*start);
    }
    const double elapsed = plant.now() - reset_op;
    if (elapsed > cfg.soft_timeout && cfg.stop_flag) {
      report.exit = ResetExit::SoftTimeout;
      break;
    }
    if (elapsed > cfg.hard_timeout) {
      report.exit = ResetExit::HardTimeout;
      break;
    }
    plant.poll(start);
    ++report.polls;
    if (start) ++report.staging_moves;
  }
  report.loop_seconds = plant.now() - reset_op;
  fly_home(plant, cfg, home, report);
  report.final_position = plant.current().xy();
  return report;
}

namespace {

void attach_contacts(const sim::DroneSim& sim, ResetReport& report) {
  report.contact_events = sim.contact_events();
  report.min_clearance = sim.min_clearance();
  report.final_position = sim.pose().xy();
}

}  // namespace

ResetReport reset_sequence(sim::DroneSim& sim, const ResetConfig& cfg, Vec2 home) {
  SimPlant plant(sim);
  ResetReport report = reset_sequence(plant, cfg, home);
  attach_contacts(sim, report);
  return report;
}

ResetReport direct_reset(sim::DroneSim& sim, const ResetConfig& cfg, Vec2 home) {
  cfg.validate();
  SimPlant plant(sim);
  ResetReport report;
  const double t0 = plant.now();
  plant.command_reset(home);
  report.exit = ResetExit::HardTimeout;
  while (plant.now() - t0 <= cfg.hard_timeout) {
    if (distance_to(plant.current(), home, plant.altitude()) <= cfg.arrive_radius) {
      report.exit = ResetExit::Arrived;
      break;
    }
    plant.poll(home);
    ++report.polls;
  }
  report.loop_seconds = plant.now() - t0;
  fly_home(plant, cfg, home, report);
  attach_contacts(sim, report);
  return report;
}

}  // namespace uavnav::rl
