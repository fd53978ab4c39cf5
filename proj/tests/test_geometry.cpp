#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "uavsim/camera.hpp"
#include "uavsim/euler.hpp"
#include "uavsim/frames.hpp"
#include "uavsim/rigid_transform.hpp"

#include <random>

using namespace uavsim;

namespace {

const Frame k3dFrames[] = {Frame::WorldEsu, Frame::EgoFlu, Frame::SensorCamRdf,
                           Frame::SensorLidarFlu, Frame::SensorRadarFrd};

Mat3 random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Eigen::Quaterniond q(n(rng), n(rng), n(rng), n(rng));
  q.normalize();
  return q.toRotationMatrix();
}

}  // namespace

TEST_CASE("frame axis-map reference values") {
  // A point 1 m forward of an FLU sensor is 1 m along +z in RDF.
  const Vec3 flu(1.0, 0.0, 0.0);
  const Vec3 rdf = convert_frame(flu, Frame::EgoFlu, Frame::SensorCamRdf);
  CHECK(rdf.isApprox(Vec3(0.0, 0.0, 1.0), 1e-15));

  // East-South-Up into the canonical frame flips the second axis.
  const Vec3 esu(1.0, 2.0, 3.0);
  const Vec3 canon = to_canonical_matrix(Frame::WorldEsu) * esu;
  CHECK(canon.isApprox(Vec3(1.0, -2.0, 3.0), 1e-15));

  // FRD: 1 m right, 2 m down -> -1 m left (y), -2 m up (z).
  const Vec3 frd(0.5, 1.0, 2.0);
  CHECK(convert_frame(frd, Frame::SensorRadarFrd, Frame::EgoFlu)
            .isApprox(Vec3(0.5, -1.0, -2.0), 1e-15));
}

TEST_CASE("frame metadata") {
  CHECK(frame_info(Frame::WorldEsu).handedness == Handedness::Left);
  for (Frame f : {Frame::EgoFlu, Frame::SensorCamRdf, Frame::SensorLidarFlu,
                  Frame::SensorRadarFrd})
    CHECK(frame_info(f).handedness == Handedness::Right);
  CHECK_FALSE(frame_info(Frame::ImageRdf2d).is_3d);
  CHECK_THROWS_AS(to_canonical_matrix(Frame::ImageRdf2d), std::invalid_argument);
  CHECK_THROWS_AS(convert_frame(Vec3::Zero(), Frame::EgoFlu, Frame::ImageRdf2d),
                  std::invalid_argument);
}

TEST_CASE("round trip across every ordered frame pair") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  for (Frame from : k3dFrames) {
    for (Frame to : k3dFrames) {
      for (int i = 0; i < 50; ++i) {
        const Vec3 p(u(rng), u(rng), u(rng));
        const Vec3 back = convert_frame(convert_frame(p, from, to), to, from);
        CHECK((back - p).cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  }
}

TEST_CASE("axis maps are orthonormal and norm preserving") {
  for (Frame f : k3dFrames) {
    const Mat3 m = to_canonical_matrix(f);
    CHECK((m.transpose() * m - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("rigid transform algebra") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int i = 0; i < 100; ++i) {
    RigidTransform a{random_rotation(rng), {u(rng), u(rng), u(rng)}};
    RigidTransform b{random_rotation(rng), {u(rng), u(rng), u(rng)}};
    const Vec3 p(u(rng), u(rng), u(rng));

    CHECK(((a * b).apply(p) - a.apply(b.apply(p))).norm() < 1e-10);
    CHECK((a.inverse().apply(a.apply(p)) - p).norm() < 1e-10);
    CHECK(((a * a.inverse()).apply(p) - p).norm() < 1e-10);
    CHECK(RigidTransform::from_matrix(a.matrix()).apply(p).isApprox(a.apply(p), 1e-12));
    CHECK(a.is_valid());

    // Distances are invariant under any rigid motion.
    const Vec3 q(u(rng), u(rng), u(rng));
    CHECK(std::abs((a.apply(p) - a.apply(q)).norm() - (p - q).norm()) < 1e-10);
  }
}

TEST_CASE("reorthonormalize recovers a drifted rotation") {
  std::mt19937_64 rng(3);
  RigidTransform t{random_rotation(rng), Vec3::Zero()};
  t.rotation += 1e-4 * Mat3::Random();
  CHECK_FALSE(t.is_valid());
  t.reorthonormalize();
  CHECK(t.is_valid());
}

TEST_CASE("euler round trip") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ang(-179.0, 179.0);
  std::uniform_real_distribution<double> pit(-89.0, 89.0);
  for (int i = 0; i < 500; ++i) {
    EulerPose e;
    e.roll_deg = ang(rng);
    e.pitch_deg = pit(rng);
    e.yaw_deg = ang(rng);
    const EulerPose back = EulerPose::from_rotation(e.rotation());
    CHECK(std::abs(wrap_deg(back.roll_deg - e.roll_deg)) < 1e-9);
    CHECK(std::abs(back.pitch_deg - e.pitch_deg) < 1e-9);
    CHECK(std::abs(wrap_deg(back.yaw_deg - e.yaw_deg)) < 1e-9);
  }
}

TEST_CASE("euler reference directions") {
  EulerPose e;
  e.yaw_deg = 90.0;
  // Yaw 90: body forward (+x) points along world +y.
  CHECK((e.rotation() * Vec3::UnitX()).isApprox(Vec3::UnitY(), 1e-12));
  e.yaw_deg = 0.0;
  e.pitch_deg = 90.0;
  // R = Ry(90 deg) maps +x to -z.
  CHECK((e.rotation() * Vec3::UnitX()).isApprox(-Vec3::UnitZ(), 1e-12));
}

TEST_CASE("gimbal lock extraction stays finite and consistent") {
  EulerPose e;
  e.pitch_deg = 90.0;
  e.yaw_deg = 35.0;
  e.roll_deg = -20.0;
  const EulerPose back = EulerPose::from_rotation(e.rotation());
  CHECK(back.roll_deg == 0.0);
  CHECK((back.rotation() - e.rotation()).cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("fov intrinsics reference") {
  const CameraModel cam = intrinsics_from_fov(1280, 720, 90.0);
  CHECK(cam.fx == doctest::Approx(640.0).epsilon(1e-12));
  CHECK(cam.fy == doctest::Approx(640.0).epsilon(1e-12));
  CHECK(cam.cx == doctest::Approx(640.0));
  CHECK(cam.cy == doctest::Approx(360.0));
  CHECK_THROWS_AS(intrinsics_from_fov(0, 720, 90.0), std::invalid_argument);
  CHECK_THROWS_AS(intrinsics_from_fov(1280, 720, 180.0), std::invalid_argument);
  CHECK_THROWS_AS(intrinsics_from_fov(1280, 720, -1.0), std::invalid_argument);
}

TEST_CASE("project/unproject round trip") {
  std::mt19937_64 rng(13);
  CameraModel cam = intrinsics_from_fov(1280, 720, 90.0);
  cam.extrinsic.rotation = random_rotation(rng);
  cam.extrinsic.translation = Vec3(0.3, -1.2, 2.0);

  std::uniform_real_distribution<double> u(-50.0, 50.0);
  int tested = 0;
  while (tested < 200) {
    const Vec3 p(u(rng), u(rng), u(rng));
    const auto pd = project_point(p, cam);
    if (!pd) continue;
    const Vec3 back = unproject(pd->uv.x(), pd->uv.y(), pd->depth, cam);
    CHECK((back - p).norm() < 1e-9);
    ++tested;
  }

  CHECK_FALSE(project_point(cam.extrinsic.inverse().apply(Vec3(0, 0, -1)), cam).has_value());
  CHECK_THROWS_AS(unproject(0, 0, 0.0, cam), std::invalid_argument);
}

TEST_CASE("image bounds are half open") {
  const CameraModel cam = intrinsics_from_fov(640, 480, 90.0);
  CHECK(cam.contains(0.0, 0.0));
  CHECK(cam.contains(639.999, 479.999));
  CHECK_FALSE(cam.contains(640.0, 100.0));
  CHECK_FALSE(cam.contains(-0.001, 100.0));
}

TEST_CASE("seed derivation is order free and spread out") {
  CHECK(derive_seed(42, 7) == derive_seed(42, 7));
  CHECK(derive_seed(42, 7) != derive_seed(42, 8));
  CHECK(derive_seed(42, 7) != derive_seed(43, 7));
}
