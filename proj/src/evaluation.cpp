#include "uavsim/evaluation.hpp"

#include "uavsim/iou.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace uavsim {

PoseErrorReport pose_errors(const BBox3D& pred, const BBox3D& gt) {
  PoseErrorReport rep;
  const double tr = (pred.rotation.transpose() * gt.rotation).trace();
  rep.rot_err_deg = rad2deg(std::acos(std::clamp((tr - 1.0) / 2.0, -1.0, 1.0)));
  rep.pos_err_m = (pred.center - gt.center).norm();
  rep.size_err_m = (pred.size - gt.size).cwiseAbs().mean();
  return rep;
}

namespace {

/// Shared AP engine over any box type with an iou() overload. Predictions
/// are ranked globally by score; a prediction may only match unmatched
/// ground truth of its own frame.
template <typename Det, typename Box>
double ap_impl(std::span<const std::vector<Det>> preds, std::span<const std::vector<Box>> gts,
               double thr) {
  std::size_t n_gt = 0;
  for (const auto& g : gts) n_gt += g.size();
  std::size_t n_pred = 0;
  for (const auto& p : preds) n_pred += p.size();
  if (n_gt == 0) return n_pred == 0 ? 1.0 : 0.0;
  if (n_pred == 0) return 0.0;

  struct Ref {
    int frame;
    int index;
  };
  std::vector<Ref> order;
  order.reserve(n_pred);
  for (std::size_t f = 0; f < preds.size(); ++f)
    for (std::size_t i = 0; i < preds[f].size(); ++i)
      order.push_back({static_cast<int>(f), static_cast<int>(i)});
  std::stable_sort(order.begin(), order.end(), [&](const Ref& a, const Ref& b) {
    return preds[a.frame][a.index].score > preds[b.frame][b.index].score;
  });

  std::vector<std::vector<bool>> gt_matched(gts.size());
  for (std::size_t f = 0; f < gts.size(); ++f) gt_matched[f].assign(gts[f].size(), false);

  std::vector<int> tp(n_pred, 0);
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    const auto& det = preds[order[rank].frame][order[rank].index];
    const auto& frame_gts = gts[order[rank].frame];
    auto& matched = gt_matched[order[rank].frame];
    double best_iou = 0.0;
    int best_gt = -1;
    for (std::size_t g = 0; g < frame_gts.size(); ++g) {
      if (matched[g]) continue;
      const double v = iou(det.box, frame_gts[g]);
      if (v > best_iou) {
        best_iou = v;
        best_gt = static_cast<int>(g);
      }
    }
    if (best_gt >= 0 && best_iou >= thr) {
      matched[best_gt] = true;
      tp[rank] = 1;
    }
  }

  // All-points interpolation: integrate the precision envelope over recall.
  std::vector<double> recall(n_pred), precision(n_pred);
  int cum_tp = 0;
  for (std::size_t i = 0; i < n_pred; ++i) {
    cum_tp += tp[i];
    recall[i] = cum_tp / static_cast<double>(n_gt);
    precision[i] = static_cast<double>(cum_tp) / static_cast<double>(i + 1);
  }
  for (int i = static_cast<int>(precision.size()) - 2; i >= 0; --i)
    precision[i] = std::max(precision[i], precision[i + 1]);
  double ap = 0.0;
  double prev_recall = 0.0;
  for (std::size_t i = 0; i < n_pred; ++i) {
    ap += (recall[i] - prev_recall) * precision[i];
    prev_recall = recall[i];
  }
  return ap;
}

template <typename Det, typename Box>
double ap_single(std::span<const Det> preds, std::span<const Box> gts, double thr) {
  const std::vector<std::vector<Det>> p{{preds.begin(), preds.end()}};
  const std::vector<std::vector<Box>> g{{gts.begin(), gts.end()}};
  return ap_impl<Det, Box>(p, g, thr);
}

}  // namespace

double average_precision(std::span<const Detection2D> preds, std::span<const BBox2D> gts,
                         double iou_threshold) {
  return ap_single(preds, gts, iou_threshold);
}

double average_precision(std::span<const Detection3D> preds, std::span<const BBox3D> gts,
                         double iou_threshold) {
  return ap_single(preds, gts, iou_threshold);
}

double average_precision_frames(std::span<const std::vector<Detection2D>> preds,
                                std::span<const std::vector<BBox2D>> gts,
                                double iou_threshold) {
  if (preds.size() != gts.size()) throw std::invalid_argument("frame counts differ");
  return ap_impl(preds, gts, iou_threshold);
}

double average_precision_frames(std::span<const std::vector<Detection3D>> preds,
                                std::span<const std::vector<BBox3D>> gts,
                                double iou_threshold) {
  if (preds.size() != gts.size()) throw std::invalid_argument("frame counts differ");
  return ap_impl(preds, gts, iou_threshold);
}

TrackEvalResult tracking_metrics(std::span<const BBox2D> pred, std::span<const BBox2D> gt,
                                 const TrackEvalParams& params) {
  if (pred.size() != gt.size()) throw std::invalid_argument("frame counts differ");
  if (pred.empty()) throw std::invalid_argument("empty sequence");
  const std::size_t n = pred.size();

  std::vector<double> ious(n);
  std::size_t p_hits = 0, pn_hits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ious[i] = iou(pred[i], gt[i]);
    const Vec2 err = pred[i].center() - gt[i].center();
    if (err.norm() <= params.center_threshold_px) ++p_hits;
    const Vec2 norm_err(err.x() / gt[i].width(), err.y() / gt[i].height());
    if (norm_err.norm() <= params.norm_threshold) ++pn_hits;
  }

  double auc_sum = 0.0;
  constexpr int kThresholds = 101;  // 0, 0.01, ..., 1
  for (int t = 0; t < kThresholds; ++t) {
    const double thr = t / 100.0;
    const auto success =
        std::count_if(ious.begin(), ious.end(), [&](double v) { return v >= thr; });
    auc_sum += static_cast<double>(success) / n;
  }

  TrackEvalResult r;
  r.auc = 100.0 * auc_sum / kThresholds;
  r.precision = 100.0 * p_hits / n;
  r.precision_norm = 100.0 * pn_hits / n;
  return r;
}

TrajEvalResult ade_fde(std::span<const Vec3> pred, std::span<const Vec3> gt,
                       std::span<const double> horizons_s, double rate) {
  TrajEvalResult res;
  for (double h : horizons_s) {
    const auto frames = static_cast<std::size_t>(std::lround(h * rate));
    if (frames == 0 || pred.size() < frames || gt.size() < frames)
      throw std::invalid_argument("prediction too short for horizon " + std::to_string(h) +
                                  " s");
    double sum = 0.0;
    for (std::size_t i = 0; i < frames; ++i) sum += (pred[i] - gt[i]).norm();
    res.by_horizon[h] = {sum / frames, (pred[frames - 1] - gt[frames - 1]).norm()};
  }
  return res;
}

std::vector<Vec3> kalman_cv_predict(std::span<const Vec3> observed, double rate,
                                    double horizon_s, const KalmanParams& params) {
  if (observed.size() < 2) throw std::invalid_argument("need at least 2 observations");
  const double dt = 1.0 / rate;

  using Vec6 = Eigen::Matrix<double, 6, 1>;
  using Mat6 = Eigen::Matrix<double, 6, 6>;
  using Mat36 = Eigen::Matrix<double, 3, 6>;

  Mat6 F = Mat6::Identity();
  F.topRightCorner<3, 3>() = dt * Mat3::Identity();

  // Discrete white-noise acceleration model.
  const double sa2 = params.process_accel_sigma * params.process_accel_sigma;
  Mat6 Q = Mat6::Zero();
  Q.topLeftCorner<3, 3>() = sa2 * std::pow(dt, 4) / 4.0 * Mat3::Identity();
  Q.topRightCorner<3, 3>() = sa2 * std::pow(dt, 3) / 2.0 * Mat3::Identity();
  Q.bottomLeftCorner<3, 3>() = sa2 * std::pow(dt, 3) / 2.0 * Mat3::Identity();
  Q.bottomRightCorner<3, 3>() = sa2 * dt * dt * Mat3::Identity();

  Mat36 H = Mat36::Zero();
  H.leftCols<3>() = Mat3::Identity();
  const Mat3 R = params.measurement_sigma * params.measurement_sigma * Mat3::Identity();

  // Initialize from the first two observations.
  Vec6 x;
  x << observed[1], (observed[1] - observed[0]) * rate;
  Mat6 P = Mat6::Identity();
  P.topLeftCorner<3, 3>() *= params.measurement_sigma * params.measurement_sigma;
  P.bottomRightCorner<3, 3>() *= 2.0 * params.measurement_sigma * params.measurement_sigma *
                                 rate * rate;

  for (std::size_t i = 2; i < observed.size(); ++i) {
    x = F * x;
    P = F * P * F.transpose() + Q;
    const Eigen::Vector3d innov = observed[i] - H * x;
    const Mat3 S = H * P * H.transpose() + R;
    const Eigen::Matrix<double, 6, 3> K = P * H.transpose() * S.inverse();
    x += K * innov;
    P = (Mat6::Identity() - K * H) * P;
  }

  const auto steps = static_cast<std::size_t>(std::lround(horizon_s * rate));
  std::vector<Vec3> out;
  out.reserve(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    x = F * x;
    out.push_back(x.head<3>());
  }
  return out;
}

}  // namespace uavsim
