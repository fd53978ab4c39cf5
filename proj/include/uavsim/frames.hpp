#pragma once

#include "uavsim/types.hpp"

#include <stdexcept>
#include <string_view>

namespace uavsim {

/// The six coordinate conventions used across the toolkit. The world frame
/// (CARLA-style East-South-Up) is the only left-handed 3D frame; everything
/// else is right-handed. ImageRdf2d is a 2D pixel frame and cannot be an
/// endpoint of a 3D conversion.
enum class Frame {
  WorldEsu,
  EgoFlu,
  SensorCamRdf,
  SensorLidarFlu,
  SensorRadarFrd,
  ImageRdf2d,
};

enum class Handedness { Left, Right };

struct FrameInfo {
  std::string_view name;
  Handedness handedness;
  bool is_3d;
};

inline const FrameInfo& frame_info(Frame f) {
  static const FrameInfo table[] = {
      {"World-ESU", Handedness::Left, true},
      {"Ego-FLU", Handedness::Right, true},
      {"SensorCam-RDF", Handedness::Right, true},
      {"SensorLidar-FLU", Handedness::Right, true},
      {"SensorRadar-FRD", Handedness::Right, true},
      {"Image-RDF-2D", Handedness::Right, false},
  };
  return table[static_cast<int>(f)];
}

/// Axis map from a convention into the canonical internal frame.
///
/// The canonical frame is right-handed, obtained from World-ESU by negating
/// the south axis: x = east = forward, y = north = left, z = up. All
/// cross-frame math routes through it, so the single left-handed convention
/// is isolated behind one sign flip.
inline Mat3 to_canonical_matrix(Frame f) {
  Mat3 m = Mat3::Identity();
  switch (f) {
    case Frame::WorldEsu:
      m(1, 1) = -1.0;  // south -> north
      return m;
    case Frame::EgoFlu:
    case Frame::SensorLidarFlu:
      return m;  // canonical == FLU
    case Frame::SensorRadarFrd:
      // (f, r, d) -> (f, -r, -d)
      m(1, 1) = -1.0;
      m(2, 2) = -1.0;
      return m;
    case Frame::SensorCamRdf: {
      // (r, d, fwd) -> (fwd, -r, -d)
      Mat3 c = Mat3::Zero();
      c(0, 2) = 1.0;
      c(1, 0) = -1.0;
      c(2, 1) = -1.0;
      return c;
    }
    case Frame::ImageRdf2d:
      throw std::invalid_argument("Image-RDF-2D is not a 3D frame");
  }
  throw std::invalid_argument("unknown frame");
}

/// Re-labels a point between two axis conventions (no translation involved).
inline Vec3 convert_frame(const Vec3& p, Frame from, Frame to) {
  if (!frame_info(from).is_3d || !frame_info(to).is_3d)
    throw std::invalid_argument("convert_frame requires 3D frame endpoints");
  return to_canonical_matrix(to).transpose() * (to_canonical_matrix(from) * p);
}

}  // namespace uavsim
