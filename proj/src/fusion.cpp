#include "uavsim/fusion.hpp"

#include "uavsim/iou.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace uavsim {

void ScoreWeights::validate() const {
  if (std::abs(rgb + ir + lidar + radar - 1.0) > 1e-12)
    throw std::invalid_argument("score weights must sum to 1");
}

std::vector<CorrespondencePair> build_correspondences(std::span<const Vec3> points,
                                                      const CameraModel& cam_rgb,
                                                      const CameraModel& cam_ir) {
  std::vector<CorrespondencePair> pairs;
  pairs.reserve(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    const auto p_rgb = project_point(points[k], cam_rgb);
    if (!p_rgb || !cam_rgb.contains(p_rgb->uv.x(), p_rgb->uv.y())) continue;
    const auto p_ir = project_point(points[k], cam_ir);
    if (!p_ir || !cam_ir.contains(p_ir->uv.x(), p_ir->uv.y())) continue;
    pairs.push_back({p_rgb->uv, p_ir->uv, static_cast<int>(k)});
  }
  return pairs;
}

namespace {

struct Candidate {
  double d2;
  int pair_index;  // index into the pair list; deterministic tie-break
};

/// Nearest-cell sample of the IR grid at a projected position.
std::span<const float> sample_nearest(const FeatureGrid& f_ir, const Vec2& p_ir) {
  const int cj = std::clamp(static_cast<int>(std::lround(p_ir.x())), 0, f_ir.width() - 1);
  const int ci = std::clamp(static_cast<int>(std::lround(p_ir.y())), 0, f_ir.height() - 1);
  return f_ir.pixel(ci, cj);
}

}  // namespace

FeatureGrid align_ir_features(const FeatureGrid& f_ir,
                              std::span<const CorrespondencePair> pairs,
                              const FusionConfig& cfg, int out_height, int out_width) {
  if (cfg.radius < 0) throw std::invalid_argument("radius must be >= 0");
  if (cfg.k_neighbors < 1) throw std::invalid_argument("k_neighbors must be >= 1");
  const int depth = f_ir.depth();
  FeatureGrid out(out_height, out_width, depth);

  // Bucket pairs by the integer cell of their RGB projection; a window query
  // then only touches the (2r+1+1)^2 neighboring buckets.
  std::unordered_map<long long, std::vector<int>> buckets;
  buckets.reserve(pairs.size());
  auto key = [](int bu, int bv) {
    return (static_cast<long long>(bv) << 32) ^ static_cast<unsigned int>(bu);
  };
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const int bu = static_cast<int>(std::floor(pairs[p].p_rgb.x()));
    const int bv = static_cast<int>(std::floor(pairs[p].p_rgb.y()));
    buckets[key(bu, bv)].push_back(static_cast<int>(p));
  }

  std::vector<Candidate> cands;
  std::vector<double> acc(depth);
  for (int i = 0; i < out_height; ++i) {
    for (int j = 0; j < out_width; ++j) {
      cands.clear();
      for (int bv = i - cfg.radius; bv <= i + cfg.radius; ++bv) {
        for (int bu = j - cfg.radius; bu <= j + cfg.radius; ++bu) {
          auto it = buckets.find(key(bu, bv));
          if (it == buckets.end()) continue;
          for (int p : it->second) {
            const double du = pairs[p].p_rgb.x() - j;
            const double dv = pairs[p].p_rgb.y() - i;
            if (std::max(std::abs(du), std::abs(dv)) > cfg.radius) continue;
            cands.push_back({du * du + dv * dv, p});
          }
        }
      }
      if (cands.empty()) continue;  // zero vector
      std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        return a.d2 != b.d2 ? a.d2 < b.d2 : a.pair_index < b.pair_index;
      });
      const int k = std::min<int>(cfg.k_neighbors, static_cast<int>(cands.size()));
      std::fill(acc.begin(), acc.end(), 0.0);
      for (int n = 0; n < k; ++n) {
        const auto f = sample_nearest(f_ir, pairs[cands[n].pair_index].p_ir);
        for (int c = 0; c < depth; ++c) acc[c] += f[c];
      }
      auto dst = out.pixel(i, j);
      for (int c = 0; c < depth; ++c) dst[c] = static_cast<float>(acc[c] / k);
    }
  }
  return out;
}

FeatureGrid fuse_grids(const FeatureGrid& f_rgb, const FeatureGrid& f_ir_aligned,
                       const FusionConfig& cfg) {
  if (f_rgb.height() != f_ir_aligned.height() || f_rgb.width() != f_ir_aligned.width())
    throw std::invalid_argument("fuse_grids: grid resolutions differ");
  const int d_rgb = f_rgb.depth();
  const int d_ir = f_ir_aligned.depth();
  if (cfg.weights.cols() != d_rgb + d_ir)
    throw std::invalid_argument("fuse_grids: weight columns must equal concatenated depth");
  if (cfg.bias.size() != cfg.weights.rows())
    throw std::invalid_argument("fuse_grids: bias size must equal weight rows");

  const int d_out = static_cast<int>(cfg.weights.rows());
  FeatureGrid out(f_rgb.height(), f_rgb.width(), d_out);
  Eigen::VectorXf cat(d_rgb + d_ir);
  for (int i = 0; i < f_rgb.height(); ++i) {
    for (int j = 0; j < f_rgb.width(); ++j) {
      const auto a = f_rgb.pixel(i, j);
      const auto b = f_ir_aligned.pixel(i, j);
      for (int c = 0; c < d_rgb; ++c) cat[c] = a[c];
      for (int c = 0; c < d_ir; ++c) cat[d_rgb + c] = b[c];
      const Eigen::VectorXf fused = cfg.weights * cat + cfg.bias;
      auto dst = out.pixel(i, j);
      for (int c = 0; c < d_out; ++c) dst[c] = fused[c];
    }
  }
  return out;
}

double late_fusion_score(double s_rgb, double s_ir, double s_lidar, double s_radar,
                         const ScoreWeights& w) {
  w.validate();
  return w.rgb * s_rgb + w.ir * s_ir + w.lidar * s_lidar + w.radar * s_radar;
}

int best_branch(double s_rgb, double s_ir, double s_lidar, double s_radar) {
  const double scores[4] = {s_rgb, s_ir, s_lidar, s_radar};
  int best = 0;
  for (int i = 1; i < 4; ++i)
    if (scores[i] > scores[best]) best = i;
  return best;
}

namespace {

template <typename Det>
std::vector<Det> nms_impl(std::vector<Det> dets, double iou_threshold) {
  std::stable_sort(dets.begin(), dets.end(),
                   [](const Det& a, const Det& b) { return a.score > b.score; });
  std::vector<Det> kept;
  for (const auto& d : dets) {
    bool suppressed = false;
    for (const auto& k : kept) {
      if (iou(d.box, k.box) > iou_threshold) {
        suppressed = true;
        break;
      }
    }
    if (!suppressed) kept.push_back(d);
  }
  return kept;
}

}  // namespace

std::vector<Detection2D> nms(std::vector<Detection2D> detections, double iou_threshold) {
  return nms_impl(std::move(detections), iou_threshold);
}

std::vector<Detection3D> nms(std::vector<Detection3D> detections, double iou_threshold) {
  return nms_impl(std::move(detections), iou_threshold);
}

}  // namespace uavsim
