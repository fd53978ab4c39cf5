#include "uavsim/iou.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace uavsim {

double iou(const BBox2D& a, const BBox2D& b) {
  const double iw = std::min(a.u_max, b.u_max) - std::max(a.u_min, b.u_min);
  const double ih = std::min(a.v_max, b.v_max) - std::max(a.v_min, b.v_min);
  if (iw <= 0.0 || ih <= 0.0) return 0.0;
  const double inter = iw * ih;
  const double uni = a.area() + b.area() - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

namespace {

using Poly = std::vector<Vec2>;

/// Footprint of the box in the camera-frame ground plane (x-z), using the
/// heading of the body forward axis projected into that plane.
Poly footprint(const BBox3D& box) {
  const Vec3 fwd = box.rotation.col(0);
  double yaw = std::atan2(-fwd.z(), fwd.x());  // heading in x-z, y-down frame
  if (!std::isfinite(yaw)) yaw = 0.0;
  const double c = std::cos(yaw), s = std::sin(yaw);
  const double hl = box.size[2] / 2.0;  // length along forward
  const double hw = box.size[0] / 2.0;  // width, lateral
  const Vec2 center(box.center.x(), box.center.z());
  const Vec2 fx(c, -s);   // forward dir in (x, z)
  const Vec2 lx(s, c);    // lateral dir in (x, z)
  Poly p;
  p.push_back(center + hl * fx + hw * lx);
  p.push_back(center + hl * fx - hw * lx);
  p.push_back(center - hl * fx - hw * lx);
  p.push_back(center - hl * fx + hw * lx);
  return p;
}

double cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

/// Sutherland-Hodgman clip of `subject` against convex `clip` (CCW or CW
/// consistent winding handled via signed orientation).
Poly clip_polygon(Poly subject, const Poly& clip) {
  // Normalize clip winding to CCW.
  Poly c = clip;
  double area2 = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Vec2& p = c[i];
    const Vec2& q = c[(i + 1) % c.size()];
    area2 += p.x() * q.y() - q.x() * p.y();
  }
  if (area2 < 0.0) std::reverse(c.begin(), c.end());

  for (std::size_t i = 0; i < c.size() && !subject.empty(); ++i) {
    const Vec2& e0 = c[i];
    const Vec2& e1 = c[(i + 1) % c.size()];
    Poly out;
    for (std::size_t j = 0; j < subject.size(); ++j) {
      const Vec2& cur = subject[j];
      const Vec2& prev = subject[(j + subject.size() - 1) % subject.size()];
      const bool cur_in = cross(e0, e1, cur) >= 0.0;
      const bool prev_in = cross(e0, e1, prev) >= 0.0;
      if (cur_in != prev_in) {
        const double d0 = cross(e0, e1, prev);
        const double d1 = cross(e0, e1, cur);
        const double t = d0 / (d0 - d1);
        out.push_back(prev + t * (cur - prev));
      }
      if (cur_in) out.push_back(cur);
    }
    subject = std::move(out);
  }
  return subject;
}

double polygon_area(const Poly& p) {
  double a2 = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Vec2& u = p[i];
    const Vec2& v = p[(i + 1) % p.size()];
    a2 += u.x() * v.y() - v.x() * u.y();
  }
  return std::abs(a2) / 2.0;
}

}  // namespace

double iou(const BBox3D& a, const BBox3D& b) {
  const double ha = a.size[1], hb = b.size[1];  // vertical extent along y
  const double y_overlap = std::min(a.center.y() + ha / 2.0, b.center.y() + hb / 2.0) -
                           std::max(a.center.y() - ha / 2.0, b.center.y() - hb / 2.0);
  if (y_overlap <= 0.0) return 0.0;
  const Poly inter = clip_polygon(footprint(a), footprint(b));
  if (inter.size() < 3) return 0.0;
  const double inter_vol = polygon_area(inter) * y_overlap;
  const double va = a.size.prod();
  const double vb = b.size.prod();
  const double uni = va + vb - inter_vol;
  return uni > 0.0 ? inter_vol / uni : 0.0;
}

}  // namespace uavsim
