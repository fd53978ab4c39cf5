#pragma once

#include "uavsim/annotation.hpp"
#include "uavsim/camera.hpp"
#include "uavsim/types.hpp"

#include <span>
#include <vector>

namespace uavsim {

/// Dense H x W x D feature map, row-major with channels innermost.
class FeatureGrid {
 public:
  FeatureGrid() = default;
  FeatureGrid(int height, int width, int depth)
      : h_(height), w_(width), d_(depth),
        data_(static_cast<std::size_t>(height) * width * depth, 0.0f) {}

  int height() const { return h_; }
  int width() const { return w_; }
  int depth() const { return d_; }

  float& at(int i, int j, int c) { return data_[index(i, j, c)]; }
  float at(int i, int j, int c) const { return data_[index(i, j, c)]; }

  std::span<float> pixel(int i, int j) { return {data_.data() + index(i, j, 0), static_cast<std::size_t>(d_)}; }
  std::span<const float> pixel(int i, int j) const {
    return {data_.data() + index(i, j, 0), static_cast<std::size_t>(d_)};
  }

  std::vector<float>& data() { return data_; }
  const std::vector<float>& data() const { return data_; }

  bool operator==(const FeatureGrid& o) const {
    return h_ == o.h_ && w_ == o.w_ && d_ == o.d_ && data_ == o.data_;
  }

 private:
  std::size_t index(int i, int j, int c) const {
    return (static_cast<std::size_t>(i) * w_ + j) * d_ + c;
  }
  int h_ = 0, w_ = 0, d_ = 0;
  std::vector<float> data_;
};

/// A single world point projected into both camera views.
struct CorrespondencePair {
  Vec2 p_rgb;       // pixels in the RGB view
  Vec2 p_ir;        // pixels in the IR view
  int point_index;  // index into the source point list
};

/// Alignment/fusion parameters. The fusion map is the 1x1 per-pixel
/// "convolution": out = weights * concat(f_rgb, f_ir) + bias, with weights
/// of shape D' x 2D.
struct FusionConfig {
  int radius = 4;       // Chebyshev neighborhood half-width, pixels
  int k_neighbors = 5;  // K nearest pairs per pixel
  Eigen::MatrixXf weights;
  Eigen::VectorXf bias;
};

/// Late-fusion score weights for (RGB, IR, LiDAR-proj, Radar-proj); must sum
/// to 1 within 1e-12.
struct ScoreWeights {
  double rgb = 0.3, ir = 0.3, lidar = 0.2, radar = 0.2;
  void validate() const;
};

/// Projects every point into both cameras and keeps those visible (positive
/// depth and inside the image bounds) in both. Output order follows input
/// order.
std::vector<CorrespondencePair> build_correspondences(std::span<const Vec3> points,
                                                      const CameraModel& cam_rgb,
                                                      const CameraModel& cam_ir);

/// Resamples IR features into RGB pixel space using the correspondence
/// anchors. For each output pixel (i, j): candidate pairs are those whose
/// RGB projection lies in the Chebyshev window of half-width cfg.radius
/// around the pixel center (u = j, v = i); the K pairs nearest to the center
/// (Euclidean, ties by pair index) are sampled from F_ir at their IR
/// projection via nearest-cell lookup and averaged. Pixels with no candidate
/// get the zero vector.
FeatureGrid align_ir_features(const FeatureGrid& f_ir,
                              std::span<const CorrespondencePair> pairs,
                              const FusionConfig& cfg, int out_height, int out_width);

/// Per-pixel channel concatenation followed by the configured linear map.
FeatureGrid fuse_grids(const FeatureGrid& f_rgb, const FeatureGrid& f_ir_aligned,
                       const FusionConfig& cfg);

/// Convex combination of the four branch confidence scores.
double late_fusion_score(double s_rgb, double s_ir, double s_lidar, double s_radar,
                         const ScoreWeights& w);

/// Index of the branch with the highest confidence; regression fields of a
/// fused detection are copied from that branch.
int best_branch(double s_rgb, double s_ir, double s_lidar, double s_radar);

struct Detection2D {
  BBox2D box;
  double score = 0.0;
};

struct Detection3D {
  BBox3D box;
  double score = 0.0;
};

/// Greedy NMS by descending score (ties by insertion order); boxes with IoU
/// above the threshold against an already-kept box are suppressed.
std::vector<Detection2D> nms(std::vector<Detection2D> detections, double iou_threshold);
std::vector<Detection3D> nms(std::vector<Detection3D> detections, double iou_threshold);

}  // namespace uavsim
