#pragma once

#include "uavsim/rigid_transform.hpp"
#include "uavsim/types.hpp"
#include "uavsim/weather.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace uavsim {

/// Oriented box in the canonical world frame. Columns of `rotation` are the
/// body axes (forward, left, up); `size` is the full extent along each.
struct OrientedBox {
  Vec3 center = Vec3::Zero();
  Mat3 rotation = Mat3::Identity();
  Vec3 size = Vec3::Ones();
};

struct LidarConfig {
  int channels = 256;
  double hfov_deg = 120.0;  // full horizontal span
  double vfov_deg = 20.0;   // half-angle: elevation in [-vfov, +vfov]
  double rate = 15.0;       // Hz
  double points_per_second = 2.5e6;
  double max_range = 200.0;  // m
  RigidTransform pose;       // sensor FLU -> world

  int points_per_frame() const { return static_cast<int>(points_per_second / rate); }
  int azimuth_steps() const { return std::max(1, points_per_frame() / channels); }
};

struct RadarConfig {
  double hfov_deg = 120.0;  // full azimuth span
  double vfov_deg = 40.0;   // full elevation span
  double max_range = 30.0;  // m, effective range
  double points_per_second = 0.5e6;  // rate cap, recorded for provenance
  double rate = 15.0;
  int returns_per_target = 5;
  RigidTransform pose;  // sensor FRD -> world
};

struct LidarReturn {
  float x, y, z;      // m, sensor FLU frame
  float intensity;    // [0, 1]
};

struct LidarScan {
  std::vector<LidarReturn> returns;
};

struct RadarReturn {
  double range;          // m
  double azimuth_deg;    // FRD: atan2(right, forward)
  double elevation_deg;  // positive up
  double radial_velocity;  // m/s, positive receding
  int target_id;
};

struct RadarScan {
  std::vector<RadarReturn> returns;
};

/// Nearest positive-t intersection of ray origin + t*dir with the box;
/// empty if the ray misses. `dir` must be unit length.
std::optional<double> ray_box_intersect(const Vec3& origin, const Vec3& dir,
                                        const OrientedBox& box);

/// Casts a regular channels x azimuth-steps ray grid against the UAV boxes
/// and an optional ground plane (world z = ground_z), keeps the nearest hit
/// within max_range, then applies the weather model. Deterministic: the RNG
/// stream of each ray depends only on (seed, ray index).
LidarScan lidar_scan(const LidarConfig& config, std::span<const OrientedBox> boxes,
                     std::optional<double> ground_z, const WeatherProfile& weather,
                     std::uint64_t seed);

struct RadarTargetState {
  Vec3 position = Vec3::Zero();  // world
  Vec3 velocity = Vec3::Zero();  // world, m/s
};

/// One cluster of returns per target inside the FoV and effective range.
/// Radial velocity is the line-of-sight component v . r_hat, perturbed by the
/// weather's velocity noise.
RadarScan radar_scan(const RadarConfig& config, std::span<const RadarTargetState> targets,
                     const WeatherProfile& weather, std::uint64_t seed);

/// Dropout plus Gaussian range perturbation along each return's ray. Clear
/// weather returns the input bit-exactly.
LidarScan apply_weather(const LidarScan& scan, const WeatherProfile& weather,
                        std::uint64_t seed);

}  // namespace uavsim
