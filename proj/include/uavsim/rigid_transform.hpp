#pragma once

#include "uavsim/types.hpp"

namespace uavsim {

/// Rigid body motion: x' = R x + t. Rotation is kept orthonormal with
/// det(R) = +1; reorthonormalize() projects back after long composition
/// chains.
struct RigidTransform {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  static RigidTransform identity() { return {}; }

  static RigidTransform from_matrix(const Mat4& m) {
    RigidTransform t;
    t.rotation = m.topLeftCorner<3, 3>();
    t.translation = m.topRightCorner<3, 1>();
    return t;
  }

  Mat4 matrix() const {
    Mat4 m = Mat4::Identity();
    m.topLeftCorner<3, 3>() = rotation;
    m.topRightCorner<3, 1>() = translation;
    return m;
  }

  Vec3 apply(const Vec3& p) const { return rotation * p + translation; }

  RigidTransform inverse() const {
    RigidTransform t;
    t.rotation = rotation.transpose();
    t.translation = -(rotation.transpose() * translation);
    return t;
  }

  /// this ∘ other: applies `other` first.
  RigidTransform compose(const RigidTransform& other) const {
    RigidTransform t;
    t.rotation = rotation * other.rotation;
    t.translation = rotation * other.translation + translation;
    return t;
  }

  friend RigidTransform operator*(const RigidTransform& a, const RigidTransform& b) {
    return a.compose(b);
  }

  /// Projects the rotation back onto SO(3) via SVD.
  void reorthonormalize() {
    Eigen::JacobiSVD<Mat3> svd(rotation, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Mat3 r = svd.matrixU() * svd.matrixV().transpose();
    if (r.determinant() < 0.0) {
      Mat3 d = Mat3::Identity();
      d(2, 2) = -1.0;
      r = svd.matrixU() * d * svd.matrixV().transpose();
    }
    rotation = r;
  }

  bool is_valid(double tol = 1e-9) const {
    return (rotation.transpose() * rotation - Mat3::Identity()).cwiseAbs().maxCoeff() < tol &&
           std::abs(rotation.determinant() - 1.0) < tol;
  }
};

}  // namespace uavsim
