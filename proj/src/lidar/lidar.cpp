#include "uavnav/lidar/lidar.hpp"

#include <algorithm>
#include <ostream>
#include <random>

namespace uavnav::lidar {

RawScan cast_scan(const sim::WorldConfig& world, Vec2 position, double yaw, double max_range,
                  const NoiseModel& noise, std::uint64_t seed) {
  if (!world.contains(position)) {
    throw ContractViolation("cast_scan: pose outside world bounds");
  }
  RawScan scan;
  scan.max_range = max_range;
  for (int d = 0; d < kBeams; ++d) {
    const double bearing = yaw + deg2rad(d);
    const Vec2 dir{std::cos(bearing), std::sin(bearing)};
    scan.ranges[static_cast<std::size_t>(d)] = sim::ray_distance(position, dir, max_range, world);
  }
  if (noise.enabled) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double p = std::clamp(noise.p_noise * noise.disturbance, 0.0, 1.0);
    for (auto& r : scan.ranges) {
      const double draw = u(rng);
      const double frac = u(rng);
      if (draw < p && r > noise.min_range) r = noise.min_range + frac * (r - noise.min_range);
    }
  }
  // A return exactly at zero (pose on an edge) is clamped to keep ranges > 0.
  for (auto& r : scan.ranges) r = std::max(r, 1e-6);
  return scan;
}

RawScan cast_scan(const sim::WorldConfig& world, const sim::DronePose& pose,
                  const NoiseModel& noise, std::uint64_t seed, double max_range) {
  return cast_scan(world, pose.xy(), 0.0, max_range, noise, seed);
}

int sector_of_beam(int degree) {
  const int d = ((degree % kBeams) + kBeams) % kBeams;
  // Sector 0 is centred on 315 deg, sector i on 315 + 45 i. Shift so the
  // arc of sector 0 starts at zero: [292.5, 337.5) -> [0, 45).
  // Integer bearings never land on a half-degree boundary.
  const double shifted = std::fmod(d - 292.5 + 720.0, 360.0);
  return static_cast<int>(shifted / 45.0);
}

SectorDistances pool_sectors(const RawScan& scan, double det_range) {
  if (!(det_range > 0.0)) throw ContractViolation("pool_sectors: det_range must be > 0");
  SectorDistances out;
  out.d.fill(det_range);
  for (int deg = 0; deg < kBeams; ++deg) {
    auto& slot = out.d[static_cast<std::size_t>(sector_of_beam(deg))];
    slot = std::min(slot, scan.ranges[static_cast<std::size_t>(deg)]);
  }
  return out;
}

FilterState FilterState::initial(const FilterParams& params) {
  if (!(params.det_range > 0.0)) throw ContractViolation("filter: det_range must be > 0");
  FilterState fs;
  fs.params = params;
  fs.lidar_data_t.fill(params.det_range);
  fs.last_output.d.fill(params.det_range);
  return fs;
}

FilterOutput filter_scan(const FilterState& fs, const SectorDistances& pooled,
                         const MotionReading& motion) {
  const FilterParams& p = fs.params;
  const bool steady = std::abs(motion.linear_velocity) <= p.vl_thr &&
                      std::abs(motion.roll) <= p.r_thr && std::abs(motion.pitch) <= p.p_thr;
  if (!steady || !fs.detect_flag) return {fs.last_output, fs, false};

  FilterState next = fs;
  SectorDistances data = pooled;
  if (!fs.first_reading) {
    const long d_r = std::lround(0.5 * p.det_range);
    for (std::size_t i = 0; i < kSectors; ++i) {
      if (fs.lidar_data_t[i] - pooled[i] >= kJumpThreshold) {
        next.index_list[i] += 1;
        if (next.index_list[i] >= d_r) {
          data[i] = p.det_range - static_cast<double>(d_r) + 1.0;
          next.index_list[i] -= static_cast<int>(p.det_range - static_cast<double>(d_r) - 1.0);
        } else {
          data[i] = fs.lidar_data_t[i] - 1.0;
        }
      } else if (next.index_list[i] > 0) {
        next.index_list[i] -= 1;
      }
    }
  }
  next.first_reading = false;
  next.lidar_data_t = pooled.d;
  next.last_output = data;
  next.detect_flag = false;
  return {data, next, true};
}

AgentState build_state(const sim::DronePose& current, const Vec3& target,
                       const SectorDistances& filtered) {
  AgentState s;
  s.v[0] = target.x - current.x;
  s.v[1] = target.y - current.y;
  s.v[2] = target.z - current.z;
  for (std::size_t i = 0; i < kSectors; ++i) s.v[3 + i] = filtered[i];
  return s;
}

void write_scan_csv_header(std::ostream& out) {
  out << "timestamp";
  for (int d = 0; d < kBeams; ++d) out << ",r" << d;
  out << '\n';
}

void write_scan_csv_row(std::ostream& out, double timestamp, const RawScan& scan) {
  out << timestamp;
  for (double r : scan.ranges) out << ',' << r;
  out << '\n';
}

void write_filter_trace_header(std::ostream& out) {
  out << "step,updated";
  for (int i = 0; i < kSectors; ++i) out << ",before" << i;
  for (int i = 0; i < kSectors; ++i) out << ",after" << i;
  for (int i = 0; i < kSectors; ++i) out << ",index" << i;
  out << '\n';
}

void write_filter_trace_row(std::ostream& out, int step, const SectorDistances& before,
                            const FilterOutput& after) {
  out << step << ',' << (after.updated ? 1 : 0);
  for (double v : before.d) out << ',' << v;
  for (double v : after.state.d) out << ',' << v;
  for (int v : after.next.index_list) out << ',' << v;
  out << '\n';
}

}  // namespace uavnav::lidar
