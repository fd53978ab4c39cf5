#include "uavsim/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <random>
#include <stdexcept>

namespace uavsim {
namespace {

Vec3 catmull_rom(const Vec3& p0, const Vec3& p1, const Vec3& p2, const Vec3& p3, double u) {
  const double u2 = u * u;
  const double u3 = u2 * u;
  return 0.5 * ((2.0 * p1) + (-p0 + p2) * u + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * u2 +
                (-p0 + 3.0 * p1 - 3.0 * p2 + p3) * u3);
}

/// Piecewise Catmull-Rom path with an arc-length lookup table.
class SplinePath {
 public:
  SplinePath(const std::vector<Vec3>& pts, bool closed) : pts_(pts), closed_(closed) {
    const int n = static_cast<int>(pts_.size());
    n_segments_ = closed_ ? n : n - 1;
    // Dense arc-length table, kSub points per segment.
    arc_.reserve(static_cast<std::size_t>(n_segments_) * kSub + 1);
    arc_.push_back({0.0, 0.0});
    Vec3 prev = eval_param(0.0);
    for (int seg = 0; seg < n_segments_; ++seg) {
      for (int i = 1; i <= kSub; ++i) {
        const double t = seg + static_cast<double>(i) / kSub;
        const Vec3 p = eval_param(t);
        arc_.push_back({arc_.back().s + (p - prev).norm(), t});
        prev = p;
      }
    }
  }

  double total_length() const { return arc_.back().s; }
  int n_segments() const { return n_segments_; }

  /// Segment index for arc length s (clamped).
  int segment_at(double s) const { return std::min(static_cast<int>(param_at(s)), n_segments_ - 1); }

  Vec3 eval_arc(double s) const { return eval_param(param_at(s)); }

 private:
  struct Knot {
    double s;
    double t;  // spline parameter: segment + local u
  };

  double param_at(double s) const {
    if (s <= 0.0) return 0.0;
    if (s >= arc_.back().s) return arc_.back().t;
    auto it = std::lower_bound(arc_.begin(), arc_.end(), s,
                               [](const Knot& k, double v) { return k.s < v; });
    const Knot& hi = *it;
    const Knot& lo = *(it - 1);
    const double w = (hi.s > lo.s) ? (s - lo.s) / (hi.s - lo.s) : 0.0;
    return lo.t + w * (hi.t - lo.t);
  }

  Vec3 eval_param(double t) const {
    int seg = std::clamp(static_cast<int>(t), 0, n_segments_ - 1);
    const double u = t - seg;
    const int n = static_cast<int>(pts_.size());
    auto ctrl = [&](int i) -> Vec3 {
      if (closed_) return pts_[((i % n) + n) % n];
      if (i < 0) return 2.0 * pts_[0] - pts_[1];
      if (i >= n) return 2.0 * pts_[n - 1] - pts_[n - 2];
      return pts_[i];
    };
    return catmull_rom(ctrl(seg - 1), ctrl(seg), ctrl(seg + 1), ctrl(seg + 2), u);
  }

  static constexpr int kSub = 64;
  std::vector<Vec3> pts_;
  bool closed_;
  int n_segments_ = 0;
  std::vector<Knot> arc_;
};

}  // namespace

const std::array<UavSpec, 7>& default_uav_specs() {
  static const std::array<UavSpec, 7> specs = {{
      {"DJI Avata 2", 0.377, {0.185, 0.212, 0.064}, 27.0},
      {"DJI Mavic Mini", 0.249, {0.159, 0.202, 0.055}, 13.0},
      {"DJI Phantom 4", 1.38, {0.289, 0.289, 0.196}, 20.0},
      {"Matrice 210 RTK V2", 4.69, {0.883, 0.886, 0.398}, 15.0},
      {"Matrice 600 Pro", 10.5, {1.668, 1.518, 0.727}, 18.0},
      {"Matrice 300 RTK", 3.6, {0.810, 0.670, 0.430}, 23.0},
      {"K3 Mini", 0.12, {0.130, 0.070, 0.055}, 5.0},
  }};
  return specs;
}

const UavSpec& uav_spec(std::string_view model) {
  for (const auto& s : default_uav_specs())
    if (s.model == model) return s;
  throw std::invalid_argument("unknown UAV model: " + std::string(model));
}

void TrajectoryConfig::validate() const {
  if (!(a > b && b > 0.0)) throw std::invalid_argument("ellipse requires a > b > 0");
  if (n_waypoints < 15 || n_waypoints > 25)
    throw std::invalid_argument("n_waypoints must be in [15, 25]");
  if (dh_bound < 0.0) throw std::invalid_argument("dh_bound must be >= 0");
}

std::vector<Vec3> generate_waypoints(const TrajectoryConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> dh(-cfg.dh_bound, cfg.dh_bound);
  std::vector<Vec3> out;
  out.reserve(cfg.n_waypoints);
  for (int i = 0; i < cfg.n_waypoints; ++i) {
    const double theta = 2.0 * std::numbers::pi * i / cfg.n_waypoints;
    const double drift = cfg.drift_per_rev * theta / (2.0 * std::numbers::pi);
    Vec3 local(cfg.a * std::cos(theta) + drift, cfg.b * std::sin(theta),
               cfg.h0 + (cfg.dh_bound > 0.0 ? dh(rng) : 0.0));
    out.push_back(cfg.anchor.apply(local));
  }
  return out;
}

PoseTrack sample_poses(const std::vector<Vec3>& waypoints, const UavSpec& spec, double rate,
                       std::uint64_t seed, const MotionParams& params) {
  if (rate <= 0.0) throw std::invalid_argument("rate must be > 0");
  if (spec.max_speed <= 0.0) throw std::invalid_argument("max_speed must be > 0");

  std::vector<Vec3> pts;
  pts.reserve(waypoints.size());
  for (const auto& p : waypoints) {
    if (!pts.empty() && (p - pts.back()).norm() < 1e-9) {
      std::cerr << "sample_poses: skipping duplicate waypoint\n";
      continue;
    }
    pts.push_back(p);
  }
  if (pts.size() < 2) throw std::invalid_argument("need at least 2 distinct waypoints");

  const SplinePath path(pts, params.closed);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> cruise_draw(params.cruise_min_frac * spec.max_speed,
                                                     params.cruise_max_frac * spec.max_speed);
  std::vector<double> cruise(path.n_segments());
  for (auto& c : cruise)
    c = params.fixed_cruise_speed ? *params.fixed_cruise_speed : cruise_draw(rng);

  const double accel = params.accel_frac * spec.max_speed;
  const double dt = 1.0 / rate;
  const int substeps = 8;
  const double dts = dt / substeps;

  // Integrate arc length with speed ramping toward the active segment's
  // cruise speed.
  std::vector<Vec3> positions;
  double s = 0.0;
  double v = cruise[0];
  const double total = path.total_length();
  const int max_samples = params.n_samples
                              ? *params.n_samples
                              : static_cast<int>(std::ceil(total / (0.1 * spec.max_speed) * rate)) + 2;
  bool exhausted = false;
  for (int i = 0; i < max_samples; ++i) {
    positions.push_back(path.eval_arc(params.closed ? std::fmod(s, total) : s));
    if (exhausted && !params.n_samples) break;
    for (int k = 0; k < substeps; ++k) {
      const double s_eff = params.closed ? std::fmod(s, total) : std::min(s, total);
      const double target = cruise[path.segment_at(s_eff)];
      if (v < target)
        v = std::min({v + accel * dts, target, spec.max_speed});
      else
        v = std::max(v - accel * dts, target);
      s += v * dts;
    }
    if (!params.closed && s >= total) {
      s = total;
      exhausted = true;
    }
  }

  const int n = static_cast<int>(positions.size());
  PoseTrack track;
  track.rate = rate;
  track.samples.resize(n);

  // Midpoint finite-difference velocity and acceleration.
  auto vel_at = [&](int i) -> Vec3 {
    if (n == 1) return Vec3::Zero();
    if (i == 0) return (positions[1] - positions[0]) * rate;
    if (i == n - 1) return (positions[n - 1] - positions[n - 2]) * rate;
    return (positions[i + 1] - positions[i - 1]) * (0.5 * rate);
  };
  std::vector<Vec3> vels(n);
  for (int i = 0; i < n; ++i) vels[i] = vel_at(i);
  auto acc_at = [&](int i) -> Vec3 {
    if (n < 3) return Vec3::Zero();
    if (i == 0) return (vels[1] - vels[0]) * rate;
    if (i == n - 1) return (vels[n - 1] - vels[n - 2]) * rate;
    return (vels[i + 1] - vels[i - 1]) * (0.5 * rate);
  };

  double yaw = 0.0;
  bool yaw_init = false;
  const double alpha = 1.0 - std::exp(-dt / params.yaw_smooth_tau);
  for (int i = 0; i < n; ++i) {
    const Vec3 vel = vels[i];
    const Vec3 acc = acc_at(i);
    const Vec3 vh(vel.x(), vel.y(), 0.0);
    if (vh.norm() > 1e-6) {
      const double yaw_raw = std::atan2(vel.y(), vel.x());
      if (!yaw_init) {
        yaw = yaw_raw;
        yaw_init = true;
      } else {
        yaw += alpha * wrap_rad(yaw_raw - yaw);
        yaw = wrap_rad(yaw);
      }
    }
    const Vec3 fwd(std::cos(yaw), std::sin(yaw), 0.0);
    const Vec3 right(std::sin(yaw), -std::cos(yaw), 0.0);
    const double a_lat = acc.dot(right);
    const double a_lon = acc.dot(fwd);

    PoseSample& smp = track.samples[i];
    smp.t = i * dt;
    smp.velocity = vel;
    smp.pose.position = positions[i];
    smp.pose.yaw_deg = wrap_deg(rad2deg(yaw));
    smp.pose.roll_deg = wrap_deg(rad2deg(std::atan2(a_lat, kGravity)));
    smp.pose.pitch_deg =
        std::clamp(rad2deg(std::atan2(a_lon, kGravity)), -params.pitch_limit_deg,
                   params.pitch_limit_deg);
  }
  return track;
}

}  // namespace uavsim
