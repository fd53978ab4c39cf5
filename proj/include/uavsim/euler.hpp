#pragma once

#include "uavsim/types.hpp"

namespace uavsim {

/// Position plus intrinsic Z-Y-X (yaw-pitch-roll) Euler attitude in degrees,
/// about FLU body axes: R = Rz(yaw) * Ry(pitch) * Rx(roll). Angles live in
/// (-180, 180]; pitch extraction is limited to [-90, 90].
struct EulerPose {
  Vec3 position = Vec3::Zero();  // meters
  double roll_deg = 0.0;
  double pitch_deg = 0.0;
  double yaw_deg = 0.0;

  Mat3 rotation() const {
    const double r = deg2rad(roll_deg);
    const double p = deg2rad(pitch_deg);
    const double y = deg2rad(yaw_deg);
    return (Eigen::AngleAxisd(y, Vec3::UnitZ()) *
            Eigen::AngleAxisd(p, Vec3::UnitY()) *
            Eigen::AngleAxisd(r, Vec3::UnitX()))
        .toRotationMatrix();
  }

  static EulerPose from_rotation(const Mat3& R, const Vec3& position = Vec3::Zero()) {
    EulerPose e;
    e.position = position;
    // R = Rz Ry Rx: R(2,0) = -sin(pitch)
    const double sp = std::clamp(-R(2, 0), -1.0, 1.0);
    e.pitch_deg = rad2deg(std::asin(sp));
    if (std::abs(sp) < 1.0 - 1e-12) {
      e.yaw_deg = rad2deg(std::atan2(R(1, 0), R(0, 0)));
      e.roll_deg = rad2deg(std::atan2(R(2, 1), R(2, 2)));
    } else {
      // Gimbal lock: yaw/roll are coupled; put everything in yaw.
      e.yaw_deg = rad2deg(std::atan2(-R(0, 1), R(1, 1)));
      e.roll_deg = 0.0;
    }
    e.roll_deg = wrap_deg(e.roll_deg);
    e.pitch_deg = wrap_deg(e.pitch_deg);
    e.yaw_deg = wrap_deg(e.yaw_deg);
    return e;
  }
};

}  // namespace uavsim
