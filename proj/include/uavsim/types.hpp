#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <numbers>

namespace uavsim {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;

inline constexpr double kGravity = 9.81;  // m/s^2

inline constexpr double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline constexpr double rad2deg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// Wraps an angle in degrees into (-180, 180].
inline double wrap_deg(double deg) {
  double w = std::fmod(deg + 180.0, 360.0);
  if (w <= 0.0) w += 360.0;
  return w - 180.0;
}

/// Wraps an angle in radians into (-pi, pi].
inline double wrap_rad(double rad) {
  double w = std::fmod(rad + std::numbers::pi, 2.0 * std::numbers::pi);
  if (w <= 0.0) w += 2.0 * std::numbers::pi;
  return w - std::numbers::pi;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives an independent RNG seed for a sub-stream (per UAV, per frame,
/// per ray, ...). Derivation depends only on the two values, never on
/// scheduling order.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return splitmix64(base ^ splitmix64(stream));
}

}  // namespace uavsim
