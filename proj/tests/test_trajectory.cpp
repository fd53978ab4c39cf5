#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "uavsim/trajectory.hpp"

#include <cmath>
#include <numbers>

using namespace uavsim;

TEST_CASE("platform catalogue") {
  const auto& specs = default_uav_specs();
  CHECK(specs.size() == 7);
  const UavSpec& avata = uav_spec("DJI Avata 2");
  CHECK(avata.mass_kg == doctest::Approx(0.377));
  CHECK(avata.max_speed == doctest::Approx(27.0));
  CHECK(uav_spec("K3 Mini").max_speed == doctest::Approx(5.0));
  CHECK(uav_spec("Matrice 600 Pro").dims_m.x() == doctest::Approx(1.668));
  CHECK(uav_spec("DJI Mavic Mini").mass_kg == doctest::Approx(0.249));
  CHECK_THROWS_AS(uav_spec("no-such-model"), std::invalid_argument);
  for (const auto& s : specs) {
    CHECK(s.max_speed > 0.0);
    CHECK(s.max_dim() == s.dims_m.maxCoeff());
  }
}

TEST_CASE("config validation") {
  TrajectoryConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.n_waypoints = 14;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.n_waypoints = 26;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.a = cfg.b;  // requires a > b
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.b = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("ellipse waypoints hit parametric reference points") {
  TrajectoryConfig cfg;
  cfg.a = 40.0;
  cfg.b = 20.0;
  cfg.h0 = 30.0;
  cfg.dh_bound = 0.0;  // isolate the deterministic part
  cfg.n_waypoints = 20;
  const auto wps = generate_waypoints(cfg);
  REQUIRE(wps.size() == 20);

  // theta = 0, pi/2, pi land on indices 0, 5, 10 for n = 20.
  CHECK((wps[0] - Vec3(40.0, 0.0, 30.0)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((wps[5] - Vec3(0.0, 20.0, 30.0)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((wps[10] - Vec3(-40.0, 0.0, 30.0)).cwiseAbs().maxCoeff() < 1e-12);

  for (const auto& p : wps) {
    const double r = p.x() * p.x() / (40.0 * 40.0) + p.y() * p.y() / (20.0 * 20.0);
    CHECK(std::abs(r - 1.0) < 1e-12);
  }
}

TEST_CASE("altitude variation respects the bound and the anchor moves the loop") {
  TrajectoryConfig cfg;
  cfg.dh_bound = 5.0;
  cfg.seed = 99;
  cfg.anchor.translation = Vec3(100.0, -50.0, 10.0);
  const auto wps = generate_waypoints(cfg);
  for (const auto& p : wps) {
    CHECK(p.z() >= cfg.h0 + 10.0 - 5.0 - 1e-12);
    CHECK(p.z() <= cfg.h0 + 10.0 + 5.0 + 1e-12);
  }
  CHECK((wps[0].head<2>() - Vec2(100.0 + cfg.a, -50.0)).norm() < 1e-12);
}

TEST_CASE("waypoints are seed deterministic") {
  TrajectoryConfig cfg;
  cfg.seed = 1234;
  const auto a = generate_waypoints(cfg);
  const auto b = generate_waypoints(cfg);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK((a[i] - b[i]).cwiseAbs().maxCoeff() == 0.0);

  cfg.seed = 1235;
  const auto c = generate_waypoints(cfg);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i)
    differs |= (a[i] - c[i]).cwiseAbs().maxCoeff() != 0.0;
  CHECK(differs);
}

TEST_CASE("sampled speed never exceeds the platform limit") {
  for (const auto& spec : default_uav_specs()) {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
      TrajectoryConfig cfg;
      cfg.seed = seed;
      const auto track = sample_poses(generate_waypoints(cfg), spec, 15.0, seed);
      REQUIRE(!track.samples.empty());
      for (const auto& s : track.samples)
        CHECK(s.velocity.norm() <= spec.max_speed * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("sampled velocity matches finite position differences") {
  TrajectoryConfig cfg;
  cfg.seed = 5;
  const auto track = sample_poses(generate_waypoints(cfg), uav_spec("DJI Phantom 4"), 15.0, 5);
  const double dt = 1.0 / track.rate;
  for (std::size_t i = 1; i + 1 < track.samples.size(); ++i) {
    const Vec3 fd =
        (track.samples[i + 1].pose.position - track.samples[i - 1].pose.position) / (2.0 * dt);
    CHECK((fd - track.samples[i].velocity).norm() < 1e-9);
  }
}

TEST_CASE("straight and level flight keeps roll and pitch flat") {
  const std::vector<Vec3> wps = {{0, 0, 10}, {40, 0, 10}, {80, 0, 10}, {120, 0, 10}};
  MotionParams mp;
  mp.fixed_cruise_speed = 5.0;
  const auto track = sample_poses(wps, uav_spec("DJI Phantom 4"), 15.0, 0, mp);
  for (const auto& s : track.samples) {
    CHECK(std::abs(s.pose.roll_deg) < 1e-6);
    CHECK(std::abs(s.pose.pitch_deg) < 1e-6);
    CHECK(std::abs(s.pose.yaw_deg) < 1e-6);
  }
}

TEST_CASE("coordinated turns bank into the turn") {
  // Closed circular loop, constant speed: roll should settle to
  // atan(v^2 / (r g)) with the sign of the turn.
  const double r = 30.0, v = 8.0;
  std::vector<Vec3> wps;
  for (int i = 0; i < 16; ++i) {
    const double th = 2.0 * std::numbers::pi * i / 16;
    wps.emplace_back(r * std::cos(th), r * std::sin(th), 20.0);
  }
  MotionParams mp;
  mp.closed = true;
  mp.fixed_cruise_speed = v;
  mp.n_samples = 600;
  const auto track = sample_poses(wps, uav_spec("DJI Avata 2"), 15.0, 0, mp);
  const double expected = rad2deg(std::atan2(v * v / r, kGravity));
  double mean_roll = 0.0;
  int n = 0;
  for (std::size_t i = 100; i < track.samples.size(); ++i) {
    mean_roll += track.samples[i].pose.roll_deg;
    ++n;
  }
  mean_roll /= n;
  // Counter-clockwise turn (left): bank left -> negative roll about forward.
  CHECK(std::abs(std::abs(mean_roll) - expected) < expected * 0.35);
  CHECK(std::abs(mean_roll + expected) < expected * 0.5);
}

TEST_CASE("yaw follows the direction of travel") {
  std::vector<Vec3> wps;
  for (int i = 0; i < 16; ++i) {
    const double th = 2.0 * std::numbers::pi * i / 16;
    wps.emplace_back(25.0 * std::cos(th), 25.0 * std::sin(th), 20.0);
  }
  MotionParams mp;
  mp.closed = true;
  mp.fixed_cruise_speed = 6.0;
  mp.n_samples = 450;
  const auto track = sample_poses(wps, uav_spec("DJI Mavic Mini"), 15.0, 0, mp);
  for (std::size_t i = 60; i < track.samples.size(); ++i) {
    const auto& s = track.samples[i];
    const double vel_yaw = rad2deg(std::atan2(s.velocity.y(), s.velocity.x()));
    CHECK(std::abs(wrap_deg(s.pose.yaw_deg - vel_yaw)) < 15.0);
  }
}

TEST_CASE("track sampling is seed deterministic") {
  TrajectoryConfig cfg;
  cfg.seed = 77;
  const auto wps = generate_waypoints(cfg);
  const auto a = sample_poses(wps, uav_spec("DJI Avata 2"), 15.0, 77);
  const auto b = sample_poses(wps, uav_spec("DJI Avata 2"), 15.0, 77);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK((a.samples[i].pose.position - b.samples[i].pose.position).cwiseAbs().maxCoeff() ==
          0.0);
    CHECK((a.samples[i].velocity - b.samples[i].velocity).cwiseAbs().maxCoeff() == 0.0);
    CHECK(a.samples[i].pose.yaw_deg == b.samples[i].pose.yaw_deg);
  }
}
