#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "uavsim/evaluation.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace uavsim;

namespace {

Detection2D det(double u0, double v0, double u1, double v1, double score) {
  return {{u0, v0, u1, v1}, score};
}

BBox2D box(double u0, double v0, double u1, double v1) { return {u0, v0, u1, v1}; }

}  // namespace

TEST_CASE("pose error reference values") {
  BBox3D gt;
  gt.center = Vec3(1.0, 2.0, 10.0);
  gt.size = Vec3(0.2, 0.1, 0.3);

  BBox3D pred = gt;
  auto rep = pose_errors(pred, gt);
  CHECK(rep.rot_err_deg == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(rep.pos_err_m == doctest::Approx(0.0));
  CHECK(rep.size_err_m == doctest::Approx(0.0));

  pred.rotation = Eigen::AngleAxisd(deg2rad(30.0), Vec3::UnitY()).toRotationMatrix();
  pred.center += Vec3(3.0, 0.0, 4.0);
  pred.size += Vec3(0.3, 0.0, 0.0);
  rep = pose_errors(pred, gt);
  CHECK(rep.rot_err_deg == doctest::Approx(30.0).epsilon(1e-9));
  CHECK(rep.pos_err_m == doctest::Approx(5.0).epsilon(1e-9));
  CHECK(rep.size_err_m == doctest::Approx(0.1).epsilon(1e-9));

  // 180 degree flip is the geodesic maximum.
  pred = gt;
  pred.rotation = Eigen::AngleAxisd(std::numbers::pi, Vec3::UnitZ()).toRotationMatrix();
  CHECK(pose_errors(pred, gt).rot_err_deg == doctest::Approx(180.0).epsilon(1e-9));
}

TEST_CASE("average precision hand-computed fixtures") {
  const std::vector<BBox2D> gts = {box(0, 0, 10, 10), box(100, 100, 110, 110)};

  SUBCASE("perfect two detections") {
    const std::vector<Detection2D> preds = {det(0, 0, 10, 10, 0.9),
                                            det(100, 100, 110, 110, 0.8)};
    CHECK(average_precision(preds, gts) == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("true positive then false positive: AP = recall reached") {
    const std::vector<Detection2D> preds = {det(0, 0, 10, 10, 0.9),
                                            det(300, 300, 310, 310, 0.8)};
    // PR points: (0.5, 1.0), (0.5, 0.5); envelope integral = 0.5 * 1.0.
    CHECK(average_precision(preds, gts) == doctest::Approx(0.5).epsilon(1e-12));
  }

  SUBCASE("false positive ranked first") {
    const std::vector<Detection2D> preds = {det(300, 300, 310, 310, 0.9),
                                            det(0, 0, 10, 10, 0.8),
                                            det(100, 100, 110, 110, 0.7)};
    // PR: (0, 0), (0.5, 1/2), (1.0, 2/3); envelope: p(r<=0.5) = 2/3,
    // p(r<=1) = 2/3 -> AP = 0.5 * 2/3 + 0.5 * 2/3 = 2/3.
    CHECK(average_precision(preds, gts) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  }

  SUBCASE("duplicate detection counts once") {
    const std::vector<Detection2D> preds = {det(0, 0, 10, 10, 0.9), det(0, 0, 10, 10, 0.8)};
    // Second is an unmatched duplicate: PR (0.5, 1), (0.5, 0.5) -> AP 0.5.
    CHECK(average_precision(preds, gts) == doctest::Approx(0.5).epsilon(1e-12));
  }

  SUBCASE("empty edge cases") {
    const std::vector<Detection2D> none;
    const std::vector<BBox2D> no_gt;
    CHECK(average_precision(none, no_gt) == doctest::Approx(1.0));
    CHECK(average_precision(std::vector<Detection2D>{det(0, 0, 1, 1, 0.5)}, no_gt) ==
          doctest::Approx(0.0));
    CHECK(average_precision(none, gts) == doctest::Approx(0.0));
  }
}

TEST_CASE("multi-frame AP ranks globally but matches per frame") {
  // Frame 0 has the GT; a high-scoring detection in frame 1 cannot claim it.
  std::vector<std::vector<Detection2D>> preds(2);
  std::vector<std::vector<BBox2D>> gts(2);
  gts[0].push_back(box(0, 0, 10, 10));
  preds[1].push_back(det(0, 0, 10, 10, 0.9));   // right place, wrong frame
  preds[0].push_back(det(0, 0, 10, 10, 0.8));
  // PR: (0, 0) then (1, 1/2); envelope p = 1/2 everywhere -> AP = 0.5.
  CHECK(average_precision_frames(preds, gts) == doctest::Approx(0.5).epsilon(1e-12));

  preds[1].clear();
  CHECK(average_precision_frames(preds, gts) == doctest::Approx(1.0).epsilon(1e-12));

  std::vector<std::vector<BBox2D>> mismatched(3);
  CHECK_THROWS_AS(average_precision_frames(preds, mismatched), std::invalid_argument);
}

TEST_CASE("3d average precision uses the oriented-volume threshold") {
  BBox3D gt;
  gt.center = Vec3(0, 0, 10);
  gt.size = Vec3(1, 1, 1);
  Detection3D hit{gt, 0.9};
  Detection3D miss = hit;
  miss.box.center.x() += 10.0;
  miss.score = 0.8;
  const std::vector<BBox3D> gts = {gt};
  const std::vector<Detection3D> preds = {hit, miss};
  CHECK(average_precision(preds, gts) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("tracking metrics reference values") {
  // 4 frames: IoU = 1, 1/3, 1/3, 0; center errors 0, 5, 5, 50 px on 10x10 GT.
  std::vector<BBox2D> gt(4, box(0, 0, 10, 10));
  std::vector<BBox2D> pred = {box(0, 0, 10, 10), box(5, 0, 15, 10), box(5, 0, 15, 10),
                              box(50, 0, 60, 10)};
  const auto r = tracking_metrics(pred, gt);

  // Success(t): 1.0 for t = 0; 0.75 for 0 < t <= 1/3; 0.25 above.
  // Sum over {0, .01, ..., 1}: 1 + 33 * .75 + 67 * .25 = 42.5 -> AUC 42.08.
  CHECK(r.auc == doctest::Approx(100.0 * 42.5 / 101.0).epsilon(1e-9));
  CHECK(r.precision == doctest::Approx(75.0));       // only the 50 px miss fails the 20 px rule
  CHECK(r.precision_norm == doctest::Approx(25.0));  // 5 px on a 10 px box is 0.5 > 0.2
}

TEST_CASE("tracking precision thresholds") {
  std::vector<BBox2D> gt = {box(0, 0, 100, 100)};
  // Center offset 19 px on a 100 px box: P hit (<= 20), P_norm hit (0.19 <= 0.2).
  std::vector<BBox2D> p1 = {box(19, 0, 119, 100)};
  auto r = tracking_metrics(p1, gt);
  CHECK(r.precision == doctest::Approx(100.0));
  CHECK(r.precision_norm == doctest::Approx(100.0));
  // Offset 21 px: P miss, P_norm hit (0.21 > 0.2 -> miss).
  std::vector<BBox2D> p2 = {box(21, 0, 121, 100)};
  r = tracking_metrics(p2, gt);
  CHECK(r.precision == doctest::Approx(0.0));
  CHECK(r.precision_norm == doctest::Approx(0.0));

  CHECK_THROWS_AS(tracking_metrics({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(tracking_metrics(p1, std::vector<BBox2D>(2)), std::invalid_argument);
}

TEST_CASE("ade and fde closed forms") {
  // Constant offset e: ADE = FDE = e at every horizon.
  const double rate = 10.0;
  std::vector<Vec3> gt, pred;
  for (int i = 0; i < 30; ++i) {
    gt.emplace_back(i * 0.1, 0.0, 0.0);
    pred.emplace_back(i * 0.1, 0.4, 0.3);  // offset norm 0.5
  }
  const std::vector<double> horizons = {1.0, 2.0, 3.0};
  auto res = ade_fde(pred, gt, horizons, rate);
  for (double h : horizons) {
    CHECK(res.by_horizon.at(h).first == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(res.by_horizon.at(h).second == doctest::Approx(0.5).epsilon(1e-12));
  }

  // Linearly growing error e_i = (i+1) * c: ADE = c (n+1)/2, FDE = c n.
  pred = gt;
  const double c = 0.01;
  for (int i = 0; i < 30; ++i) pred[i].y() += (i + 1) * c;
  res = ade_fde(pred, gt, horizons, rate);
  CHECK(res.by_horizon.at(1.0).first == doctest::Approx(c * 11.0 / 2.0).epsilon(1e-12));
  CHECK(res.by_horizon.at(1.0).second == doctest::Approx(c * 10.0).epsilon(1e-12));
  CHECK(res.by_horizon.at(3.0).second == doctest::Approx(c * 30.0).epsilon(1e-12));

  const std::vector<double> too_long = {5.0};
  CHECK_THROWS_WITH_AS(ade_fde(pred, gt, too_long, rate), doctest::Contains("5.0"),
                       std::invalid_argument);
}

TEST_CASE("kalman prediction is exact on noiseless constant velocity") {
  const double rate = 15.0;
  const Vec3 v(2.0, -1.0, 0.5);
  std::vector<Vec3> obs;
  for (int i = 0; i < 45; ++i) obs.push_back(Vec3(1.0, 2.0, 3.0) + v * (i / rate));

  const auto pred = kalman_cv_predict(obs, rate, 1.0);
  REQUIRE(pred.size() == 15);
  for (std::size_t k = 0; k < pred.size(); ++k) {
    const Vec3 expect = Vec3(1.0, 2.0, 3.0) + v * ((44.0 + k + 1.0) / rate);
    CHECK((pred[k] - expect).norm() < 1e-6);
  }

  CHECK_THROWS_AS(kalman_cv_predict(std::vector<Vec3>{Vec3::Zero()}, rate, 1.0),
                  std::invalid_argument);
}

TEST_CASE("kalman smooths measurement noise toward the true track") {
  const double rate = 15.0;
  const Vec3 v(3.0, 0.0, 0.0);
  std::mt19937_64 rng(19);
  std::normal_distribution<double> n(0.0, 0.1);
  std::vector<Vec3> obs;
  for (int i = 0; i < 90; ++i)
    obs.push_back(Vec3(0, 0, 0) + v * (i / rate) + Vec3(n(rng), n(rng), n(rng)));
  const auto pred = kalman_cv_predict(obs, rate, 1.0);
  const Vec3 truth = v * (89.0 + 15.0) / rate;
  CHECK((pred.back() - truth).norm() < 0.5);
}
