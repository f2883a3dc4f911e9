#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <utility>

#include "uavnav/common.hpp"
#include "uavnav/sim/world.hpp"

namespace uavnav::lidar {

inline constexpr int kBeams = 360;
inline constexpr int kSectors = 8;
inline constexpr int kStateDim = 3 + kSectors;
inline constexpr double kDefaultMaxRange = 12.0;
/// Largest per-step change of a sector distance that an action can cause
/// is sqrt(2); anything at or above this is treated as a spurious reading.
inline constexpr double kJumpThreshold = 1.5;

/// One revolution. ranges[d] is the return at body-frame bearing d degrees
/// (counter-clockwise from the body x axis).
struct RawScan {
  std::array<double, kBeams> ranges{};
  double max_range = kDefaultMaxRange;
  bool operator==(const RawScan&) const = default;
};

struct SectorDistances {
  std::array<double, kSectors> d{};
  double& operator[](std::size_t i) { return d[i]; }
  double operator[](std::size_t i) const { return d[i]; }
  bool operator==(const SectorDistances&) const = default;
};

/// Spurious short returns caused by attitude disturbance. Each beam is
/// replaced with probability p_noise * disturbance by a uniform range in
/// [min_range, true range).
struct NoiseModel {
  bool enabled = false;
  double p_noise = 0.02;
  double disturbance = 1.0;
  double min_range = 0.15;
};

RawScan cast_scan(const sim::WorldConfig& world, Vec2 position, double yaw, double max_range,
                  const NoiseModel& noise, std::uint64_t seed);

/// Scan from a drone pose (yaw fixed at 0, body frame == world frame).
/// Throws ContractViolation when the pose lies outside the world bounds.
RawScan cast_scan(const sim::WorldConfig& world, const sim::DronePose& pose,
                  const NoiseModel& noise, std::uint64_t seed,
                  double max_range = kDefaultMaxRange);

/// Sector i is the half-open 45 degree arc centred on action i's heading,
/// [c - 22.5, c + 22.5).
int sector_of_beam(int degree);

/// Thresholded min-pooling: dist_i = min(min of sector i, det_range).
SectorDistances pool_sectors(const RawScan& scan, double det_range);

struct FilterParams {
  double det_range = 6.0;
  double vl_thr = 0.3;
  double r_thr = 0.1;
  double p_thr = 0.1;
  bool operator==(const FilterParams&) const = default;
};

struct MotionReading {
  double linear_velocity = 0.0;
  double roll = 0.0;
  double pitch = 0.0;
};

/// Noise-elimination filter memory. lidar_data_t holds the pooled values
/// of the last accepted reading.
struct FilterState {
  FilterParams params;
  std::array<double, kSectors> lidar_data_t{};
  std::array<int, kSectors> index_list{};
  /// Last emitted state; returned unchanged while readings are gated.
  SectorDistances last_output;
  bool detect_flag = true;
  bool first_reading = true;

  static FilterState initial(const FilterParams& params);
  bool operator==(const FilterState&) const = default;
};

struct FilterOutput {
  SectorDistances state;
  FilterState next;
  /// False when the reading was gated by motion or detect_flag.
  bool updated = false;
};

FilterOutput filter_scan(const FilterState& fs, const SectorDistances& pooled,
                         const MotionReading& motion);

/// [x_d, y_d, z_d, dist_0 .. dist_7] with (x_d, y_d, z_d) = target - current.
struct AgentState {
  std::array<double, kStateDim> v{};

  double x_d() const { return v[0]; }
  double y_d() const { return v[1]; }
  double z_d() const { return v[2]; }
  double dist(std::size_t i) const { return v[3 + i]; }
  bool operator==(const AgentState&) const = default;
};

AgentState build_state(const sim::DronePose& current, const Vec3& target,
                       const SectorDistances& filtered);

/// CSV helpers for debugging dumps.
void write_scan_csv_header(std::ostream& out);
void write_scan_csv_row(std::ostream& out, double timestamp, const RawScan& scan);
void write_filter_trace_header(std::ostream& out);
void write_filter_trace_row(std::ostream& out, int step, const SectorDistances& before,
                            const FilterOutput& after);

}  // namespace uavnav::lidar
