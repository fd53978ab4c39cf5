#pragma once

#include "uavsim/annotation.hpp"
#include "uavsim/fusion.hpp"
#include "uavsim/types.hpp"

#include <map>
#include <span>
#include <vector>

namespace uavsim {

struct PoseErrorReport {
  double rot_err_deg = 0.0;   // geodesic rotation distance
  double pos_err_m = 0.0;     // Euclidean center distance
  double size_err_m = 0.0;    // mean absolute size deviation
};

PoseErrorReport pose_errors(const BBox3D& pred, const BBox3D& gt);

/// Greedy score-ordered matching (one GT per prediction, IoU >= threshold)
/// followed by all-points interpolated precision-recall integration.
/// Zero GT with zero predictions is vacuously 1; zero GT with predictions
/// is 0.
double average_precision(std::span<const Detection2D> preds, std::span<const BBox2D> gts,
                         double iou_threshold = 0.5);
double average_precision(std::span<const Detection3D> preds, std::span<const BBox3D> gts,
                         double iou_threshold = 0.25);

/// Multi-frame AP: predictions are ranked globally by score but may only
/// match ground truth of their own frame.
double average_precision_frames(std::span<const std::vector<Detection2D>> preds,
                                std::span<const std::vector<BBox2D>> gts,
                                double iou_threshold = 0.5);
double average_precision_frames(std::span<const std::vector<Detection3D>> preds,
                                std::span<const std::vector<BBox3D>> gts,
                                double iou_threshold = 0.25);

struct TrackEvalResult {
  double auc = 0.0;             // [0, 100], success-plot area
  double precision = 0.0;       // [0, 100], 20 px center rule
  double precision_norm = 0.0;  // [0, 100], box-size-normalized, 0.2 rule
};

struct TrackEvalParams {
  double center_threshold_px = 20.0;
  double norm_threshold = 0.2;
};

/// Single-target tracking metrics over per-frame predicted/ground-truth
/// boxes. AUC averages the success rate (IoU >= t) over t in {0, 0.01, ...,
/// 1}; P_norm divides the center error component-wise by the GT box size.
TrackEvalResult tracking_metrics(std::span<const BBox2D> pred, std::span<const BBox2D> gt,
                                 const TrackEvalParams& params = {});

struct TrajEvalResult {
  // horizon (s) -> (ADE, FDE) in meters.
  std::map<double, std::pair<double, double>> by_horizon;
};

/// ADE/FDE at each horizon: ADE averages per-frame displacement over the
/// first horizon*rate predicted frames; FDE is the error at the last of
/// them. Throws (naming the horizon) if the prediction is too short.
TrajEvalResult ade_fde(std::span<const Vec3> pred, std::span<const Vec3> gt,
                       std::span<const double> horizons_s, double rate);

struct KalmanParams {
  double process_accel_sigma = 1.0;   // m/s^2
  double measurement_sigma = 0.1;     // m
};

/// Constant-velocity Kalman filter: runs the filter over the observed
/// positions, then rolls the state forward (no updates) for horizon_s
/// seconds, emitting one position per tick.
std::vector<Vec3> kalman_cv_predict(std::span<const Vec3> observed, double rate,
                                    double horizon_s, const KalmanParams& params = {});

}  // namespace uavsim
