#pragma once

#include "uavsim/camera.hpp"
#include "uavsim/euler.hpp"
#include "uavsim/types.hpp"
#include "uavsim/weather.hpp"

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace uavsim {

/// Oriented box in the camera RDF frame. Columns of `rotation` are the body
/// axes (forward/length, left/width, up/height) expressed in camera
/// coordinates; `size` is (w, h, l).
struct BBox3D {
  Vec3 center = Vec3::Zero();
  Vec3 size = Vec3::Ones();  // (w, h, l)
  Mat3 rotation = Mat3::Identity();
  int instance_id = 0;
  std::string class_name;

  /// The 8 corners in camera coordinates.
  std::array<Vec3, 8> corners() const;
};

struct BBox2D {
  double u_min = 0.0, v_min = 0.0, u_max = 0.0, v_max = 0.0;  // pixels
  int instance_id = 0;

  double width() const { return u_max - u_min; }
  double height() const { return v_max - v_min; }
  Vec2 center() const { return {(u_min + u_max) / 2.0, (v_min + v_max) / 2.0}; }
  double area() const { return width() * height(); }
};

enum class Difficulty { Easy, Moderate, Hard };

std::string_view difficulty_name(Difficulty d);

/// Score cut points; the score itself is S = (d/s) * w_weather.
struct DifficultyThresholds {
  double easy_below = 60.0;
  double moderate_below = 150.0;
};

struct DifficultyRecord {
  double distance_m = 0.0;    // camera optical center to box center
  double size_m = 0.0;        // max physical dimension
  double visibility_weight = 1.0;
  double score = 0.0;
  Difficulty level = Difficulty::Easy;
};

/// Axis-aligned hull of the projected positive-depth corners, clipped to the
/// image; empty if every corner is behind the camera or the clipped hull is
/// degenerate. The box is given in the camera frame, so only intrinsics are
/// used.
std::optional<BBox2D> project_bbox3d(const BBox3D& box, const CameraModel& cam);

DifficultyRecord difficulty_score(double distance_m, double size_m,
                                  const WeatherProfile& weather,
                                  const DifficultyThresholds& thresholds = {});

struct InstanceAnnotation {
  int instance_id = 0;
  std::string class_name;
  std::optional<BBox2D> box2d;
  BBox3D box3d;
  EulerPose pose;  // position in camera frame; angles = world attitude
  DifficultyRecord difficulty;
};

struct FrameAnnotation {
  int frame_index = 0;
  std::vector<InstanceAnnotation> instances;
};

struct Histogram {
  double bin_width = 10.0;
  double origin = 0.0;
  std::map<int, std::size_t> counts;  // bin index -> count

  void add(double value) { ++counts[static_cast<int>(std::floor((value - origin) / bin_width))]; }
  std::size_t total() const;
};

struct StatsReport {
  std::size_t total_frames = 0;
  std::size_t total_instances = 0;
  Histogram distance;                        // 10 m bins
  std::map<std::string, std::size_t> class_counts;
  Histogram roll, pitch, yaw;                // 10 degree bins
  std::array<std::size_t, 3> difficulty_counts = {0, 0, 0};
  double circ_std_roll_deg = 0.0;
  double circ_std_yaw_increment_deg = 0.0;   // per-frame, per-instance yaw deltas
  double frac_distance_20_60 = 0.0;
};

/// Aggregates per-frame annotations into distribution statistics. Throws on
/// empty input.
StatsReport compute_stats(std::span<const FrameAnnotation> frames);

/// Circular standard deviation of angles in degrees.
double circular_std_deg(std::span<const double> angles_deg);

void write_stats_csv(const StatsReport& report, const std::string& out_dir);
std::string stats_summary(const StatsReport& report);

}  // namespace uavsim
