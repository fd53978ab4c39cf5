#pragma once

#include "uavsim/rigid_transform.hpp"
#include "uavsim/types.hpp"

#include <optional>
#include <stdexcept>

namespace uavsim {

/// Pinhole camera. The extrinsic maps canonical world points into the
/// camera's RDF frame (x right, y down, z forward); no distortion model.
struct CameraModel {
  double fx = 0.0, fy = 0.0;  // focal length, pixels
  double cx = 0.0, cy = 0.0;  // principal point, pixels
  int width = 0, height = 0;
  RigidTransform extrinsic;  // world -> camera

  Mat3 intrinsic_matrix() const {
    Mat3 k = Mat3::Identity();
    k(0, 0) = fx;
    k(1, 1) = fy;
    k(0, 2) = cx;
    k(1, 2) = cy;
    return k;
  }

  bool contains(double u, double v) const {
    return u >= 0.0 && u < width && v >= 0.0 && v < height;
  }
};

/// Builds square-pixel intrinsics with centered principal point from a
/// horizontal field of view: fx = W / (2 tan(hfov/2)).
inline CameraModel intrinsics_from_fov(int width, int height, double hfov_deg) {
  if (width < 1 || height < 1) throw std::invalid_argument("resolution must be >= 1");
  if (hfov_deg <= 0.0 || hfov_deg >= 180.0)
    throw std::invalid_argument("hfov must be in (0, 180) degrees");
  CameraModel cam;
  cam.width = width;
  cam.height = height;
  cam.fx = width / (2.0 * std::tan(deg2rad(hfov_deg) / 2.0));
  cam.fy = cam.fx;
  cam.cx = width / 2.0;
  cam.cy = height / 2.0;
  return cam;
}

struct PixelDepth {
  Vec2 uv;      // pixels
  double depth;  // meters, along camera z
};

/// Projects a world point; empty if the point is at or behind the camera
/// plane (z <= 0). The caller decides whether off-image pixels are kept.
inline std::optional<PixelDepth> project_point(const Vec3& world, const CameraModel& cam) {
  const Vec3 pc = cam.extrinsic.apply(world);
  if (pc.z() <= 0.0) return std::nullopt;
  return PixelDepth{{cam.fx * pc.x() / pc.z() + cam.cx, cam.fy * pc.y() / pc.z() + cam.cy},
                    pc.z()};
}

/// Inverse of project_point for a known depth; returns the world point.
inline Vec3 unproject(double u, double v, double depth, const CameraModel& cam) {
  if (depth <= 0.0) throw std::invalid_argument("unproject requires depth > 0");
  const Vec3 pc((u - cam.cx) / cam.fx * depth, (v - cam.cy) / cam.fy * depth, depth);
  return cam.extrinsic.inverse().apply(pc);
}

}  // namespace uavsim
