#pragma once

#include "uavsim/annotation.hpp"

namespace uavsim {

/// Axis-aligned 2D IoU.
double iou(const BBox2D& a, const BBox2D& b);

/// Oriented 3D IoU in the camera frame: convex polygon clipping of the two
/// yaw-rotated footprints in the ground (x-z) plane, times the vertical (y)
/// extent overlap.
double iou(const BBox3D& a, const BBox3D& b);

}  // namespace uavsim
