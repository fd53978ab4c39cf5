#include "uavsim/sensors.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace uavsim {

std::optional<double> ray_box_intersect(const Vec3& origin, const Vec3& dir,
                                        const OrientedBox& box) {
  // Slab test in the box frame.
  const Vec3 o = box.rotation.transpose() * (origin - box.center);
  const Vec3 d = box.rotation.transpose() * dir;
  const Vec3 half = 0.5 * box.size;
  double t_near = -std::numeric_limits<double>::infinity();
  double t_far = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    if (std::abs(d[i]) < 1e-15) {
      if (std::abs(o[i]) > half[i]) return std::nullopt;
      continue;
    }
    double t0 = (-half[i] - o[i]) / d[i];
    double t1 = (half[i] - o[i]) / d[i];
    if (t0 > t1) std::swap(t0, t1);
    t_near = std::max(t_near, t0);
    t_far = std::min(t_far, t1);
    if (t_near > t_far) return std::nullopt;
  }
  if (t_far < 0.0) return std::nullopt;
  return t_near > 0.0 ? t_near : t_far;
}

LidarScan lidar_scan(const LidarConfig& config, std::span<const OrientedBox> boxes,
                     std::optional<double> ground_z, const WeatherProfile& weather,
                     std::uint64_t seed) {
  const int channels = config.channels;
  const int steps = config.azimuth_steps();
  const Vec3 origin = config.pose.translation;
  const Mat3& rot = config.pose.rotation;

  LidarScan scan;
  scan.returns.reserve(static_cast<std::size_t>(channels) * steps / 4);
  for (int c = 0; c < channels; ++c) {
    const double elev = channels == 1
                            ? 0.0
                            : deg2rad(-config.vfov_deg +
                                      2.0 * config.vfov_deg * c / (channels - 1));
    const double ce = std::cos(elev), se = std::sin(elev);
    for (int j = 0; j < steps; ++j) {
      const double az = deg2rad(-config.hfov_deg / 2.0 +
                                (j + 0.5) * config.hfov_deg / steps);
      const Vec3 dir_sensor(ce * std::cos(az), ce * std::sin(az), se);  // FLU
      const Vec3 dir_world = rot * dir_sensor;

      double best = std::numeric_limits<double>::infinity();
      for (const auto& box : boxes) {
        if (auto t = ray_box_intersect(origin, dir_world, box); t && *t < best) best = *t;
      }
      if (ground_z && std::abs(dir_world.z()) > 1e-15) {
        const double t = (*ground_z - origin.z()) / dir_world.z();
        if (t > 0.0 && t < best) best = t;
      }
      if (best <= config.max_range) {
        const Vec3 p = dir_sensor * best;
        const float intensity =
            static_cast<float>(std::clamp(1.0 - best / config.max_range, 0.0, 1.0));
        scan.returns.push_back({static_cast<float>(p.x()), static_cast<float>(p.y()),
                                static_cast<float>(p.z()), intensity});
      }
    }
  }
  return apply_weather(scan, weather, derive_seed(seed, 0x11da5));
}

RadarScan radar_scan(const RadarConfig& config, std::span<const RadarTargetState> targets,
                     const WeatherProfile& weather, std::uint64_t seed) {
  const RigidTransform world_to_sensor = config.pose.inverse();
  RadarScan scan;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const Vec3 ps = world_to_sensor.apply(targets[i].position);  // FRD
    const double range = ps.norm();
    if (range <= 1e-9 || range > config.max_range) continue;
    const double az = rad2deg(std::atan2(ps.y(), ps.x()));
    const double el = rad2deg(std::atan2(-ps.z(), std::hypot(ps.x(), ps.y())));
    if (std::abs(az) > config.hfov_deg / 2.0 || std::abs(el) > config.vfov_deg / 2.0)
      continue;

    const Vec3 r_hat = (targets[i].position - config.pose.translation).normalized();
    const double v_radial = targets[i].velocity.dot(r_hat);

    std::mt19937_64 rng(derive_seed(seed, i));
    std::normal_distribution<double> pos_noise(0.0, weather.range_noise_sigma);
    std::normal_distribution<double> vel_noise(0.0, weather.velocity_noise_sigma);
    for (int k = 0; k < config.returns_per_target; ++k) {
      Vec3 pj = ps;
      double vj = v_radial;
      if (!weather.is_identity()) {
        pj += Vec3(pos_noise(rng), pos_noise(rng), pos_noise(rng));
        vj += vel_noise(rng);
      }
      const double rj = pj.norm();
      scan.returns.push_back({rj, rad2deg(std::atan2(pj.y(), pj.x())),
                              rad2deg(std::atan2(-pj.z(), std::hypot(pj.x(), pj.y()))), vj,
                              static_cast<int>(i)});
    }
  }
  return scan;
}

LidarScan apply_weather(const LidarScan& scan, const WeatherProfile& weather,
                        std::uint64_t seed) {
  if (weather.is_identity()) return scan;
  LidarScan out;
  out.returns.reserve(scan.returns.size());
  for (std::size_t i = 0; i < scan.returns.size(); ++i) {
    std::mt19937_64 rng(derive_seed(seed, i));
    std::uniform_real_distribution<double> drop(0.0, 1.0);
    if (drop(rng) < weather.dropout_prob) continue;
    LidarReturn r = scan.returns[i];
    if (weather.range_noise_sigma > 0.0) {
      const Vec3 p(r.x, r.y, r.z);
      const double range = p.norm();
      if (range > 1e-9) {
        std::normal_distribution<double> noise(0.0, weather.range_noise_sigma);
        const Vec3 q = p * ((range + noise(rng)) / range);
        r.x = static_cast<float>(q.x());
        r.y = static_cast<float>(q.y());
        r.z = static_cast<float>(q.z());
      }
    }
    out.returns.push_back(r);
  }
  return out;
}

}  // namespace uavsim
