#pragma once

#include "uavsim/euler.hpp"
#include "uavsim/rigid_transform.hpp"
#include "uavsim/types.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace uavsim {

/// Physical platform parameters. Dimensions are (L, W, H) in meters.
struct UavSpec {
  std::string model;
  double mass_kg = 0.0;
  Vec3 dims_m = Vec3::Zero();
  double max_speed = 0.0;  // m/s

  double max_dim() const { return dims_m.maxCoeff(); }
};

/// The seven default platforms, in a fixed order.
const std::array<UavSpec, 7>& default_uav_specs();

/// Lookup by model name; throws std::invalid_argument for unknown models.
const UavSpec& uav_spec(std::string_view model);

/// Elliptical waypoint-loop parameters. The ellipse lies in the anchor's
/// horizontal plane with semi-axes a (longitudinal, along the anchor's
/// forward direction) and b (lateral); z varies stochastically around h0.
struct TrajectoryConfig {
  double a = 40.0;         // m, longitudinal semi-axis
  double b = 20.0;         // m, lateral semi-axis
  double h0 = 30.0;        // m, base altitude
  double dh_bound = 5.0;   // m, |dh| bound
  int n_waypoints = 20;    // in [15, 25]
  RigidTransform anchor;   // scene locator; forward = local +x
  double drift_per_rev = 0.0;  // m, ellipse-center drift along forward per revolution
  std::uint64_t seed = 0;

  void validate() const;
};

/// Waypoints at theta_i = 2*pi*i/n on the parametric ellipse
/// (a cos t, b sin t, h0 + dh(t)), then moved by the anchor transform.
std::vector<Vec3> generate_waypoints(const TrajectoryConfig& cfg);

struct PoseSample {
  double t = 0.0;  // seconds
  EulerPose pose;
  Vec3 velocity = Vec3::Zero();  // m/s, world frame
};

struct PoseTrack {
  int uav_id = 0;
  double rate = 15.0;  // Hz
  std::vector<PoseSample> samples;
};

struct MotionParams {
  double cruise_min_frac = 0.3;
  double cruise_max_frac = 0.8;
  double accel_frac = 0.5;      // accel limit = accel_frac * max_speed per second
  double yaw_smooth_tau = 0.4;  // s, first-order yaw filter
  double pitch_limit_deg = 30.0;
  bool closed = false;          // treat the waypoint list as a closed loop
  std::optional<double> fixed_cruise_speed;  // m/s, overrides the seeded draw
  std::optional<int> n_samples;  // stop after this many samples
};

/// Samples a kinematically-limited 6-DoF track through the waypoints at the
/// given rate: Catmull-Rom path, trapezoidal speed ramps toward a per-segment
/// cruise speed, yaw following the smoothed horizontal velocity, and a
/// coordinated-turn banking model for roll/pitch.
PoseTrack sample_poses(const std::vector<Vec3>& waypoints, const UavSpec& spec, double rate,
                       std::uint64_t seed, const MotionParams& params = {});

}  // namespace uavsim
