// Command-line front end: dataset generation, statistics, metric evaluation,
// and LiDAR-guided grid fusion.

#include "uavsim/clip_io.hpp"
#include "uavsim/evaluation.hpp"
#include "uavsim/fusion.hpp"
#include "uavsim/generation.hpp"
#include "uavsim/grid_io.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>

using json = nlohmann::json;
using namespace uavsim;

namespace {

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return json::parse(in);
}

Vec3 vec3_of(const json& a) { return {a[0].get<double>(), a[1].get<double>(), a[2].get<double>()}; }

BBox2D bbox2d_of(const json& a) {
  return {a[0].get<double>(), a[1].get<double>(), a[2].get<double>(), a[3].get<double>(), 0};
}

BBox3D bbox3d_of(const json& j) {
  BBox3D b;
  b.center = vec3_of(j.at("center"));
  b.size = vec3_of(j.at("size"));
  const json& r = j.at("rotation");
  for (int i = 0; i < 3; ++i)
    for (int c = 0; c < 3; ++c) b.rotation(i, c) = r[i * 3 + c].get<double>();
  return b;
}

int cmd_generate(const std::string& config_path, std::uint64_t seed, const std::string& out,
                 const std::string& weather, int uavs, int clips) {
  ScenarioConfig cfg =
      config_path.empty() ? ScenarioConfig{} : scenario_from_json_file(config_path);
  if (!weather.empty()) cfg.weather = weather_from_name(weather);
  if (uavs > 0) cfg.n_uavs = uavs;
  for (int c = 0; c < clips; ++c) {
    const auto dir = run_generation(cfg, derive_seed(seed, static_cast<std::uint64_t>(c)), out,
                                    "clip_" + std::to_string(c));
    std::cout << "wrote " << dir.string() << "\n";
  }
  return 0;
}

int cmd_stats(const std::string& clip_dir, const std::string& out_dir) {
  const Clip clip = read_clip(clip_dir);
  std::vector<FrameAnnotation> frames;
  frames.reserve(clip.frames.size());
  for (const auto& f : clip.frames) frames.push_back(f.annotations);
  const StatsReport report = compute_stats(frames);
  write_stats_csv(report, out_dir.empty() ? clip_dir + "/stats" : out_dir);
  std::cout << stats_summary(report);
  return 0;
}

int cmd_eval(const std::string& task, const std::string& pred_path, const std::string& gt_dir) {
  const Clip clip = read_clip(gt_dir);
  const json pred = load_json_file(pred_path);
  json summary{{"task", task}};

  if (task == "pose") {
    double rot = 0.0, pos = 0.0, size = 0.0;
    int n = 0;
    for (const json& pf : pred.at("frames")) {
      const int idx = pf.at("frame_index").get<int>();
      if (idx < 0 || idx >= static_cast<int>(clip.frames.size())) continue;
      for (const json& pi : pf.at("instances")) {
        const int id = pi.at("instance_id").get<int>();
        for (const auto& gt : clip.frames[idx].annotations.instances) {
          if (gt.instance_id != id) continue;
          const auto rep = pose_errors(bbox3d_of(pi.at("bbox3d")), gt.box3d);
          rot += rep.rot_err_deg;
          pos += rep.pos_err_m;
          size += rep.size_err_m;
          ++n;
        }
      }
    }
    if (n == 0) throw std::runtime_error("no matched (frame, instance) pairs");
    summary["rot_err_deg"] = rot / n;
    summary["pos_err_m"] = pos / n;
    summary["size_err_m"] = size / n;
    summary["matched"] = n;
  } else if (task == "det2d" || task == "det3d") {
    const std::size_t nf = clip.frames.size();
    if (task == "det2d") {
      std::vector<std::vector<Detection2D>> preds(nf);
      std::vector<std::vector<BBox2D>> gts(nf);
      for (std::size_t i = 0; i < nf; ++i)
        for (const auto& a : clip.frames[i].annotations.instances)
          if (a.box2d) gts[i].push_back(*a.box2d);
      for (const json& pf : pred.at("frames")) {
        const int idx = pf.at("frame_index").get<int>();
        if (idx < 0 || idx >= static_cast<int>(nf)) continue;
        for (const json& d : pf.at("detections"))
          preds[idx].push_back({bbox2d_of(d.at("bbox2d")), d.at("score").get<double>()});
      }
      summary["ap"] = average_precision_frames(preds, gts);
    } else {
      std::vector<std::vector<Detection3D>> preds(nf);
      std::vector<std::vector<BBox3D>> gts(nf);
      for (std::size_t i = 0; i < nf; ++i)
        for (const auto& a : clip.frames[i].annotations.instances) gts[i].push_back(a.box3d);
      for (const json& pf : pred.at("frames")) {
        const int idx = pf.at("frame_index").get<int>();
        if (idx < 0 || idx >= static_cast<int>(nf)) continue;
        for (const json& d : pf.at("detections"))
          preds[idx].push_back({bbox3d_of(d.at("bbox3d")), d.at("score").get<double>()});
      }
      summary["ap"] = average_precision_frames(preds, gts);
    }
  } else if (task == "track") {
    const int target = pred.value("instance_id", 0);
    std::vector<BBox2D> pred_boxes, gt_boxes;
    for (const json& pf : pred.at("frames")) {
      const int idx = pf.at("frame_index").get<int>();
      if (idx < 0 || idx >= static_cast<int>(clip.frames.size())) continue;
      for (const auto& a : clip.frames[idx].annotations.instances) {
        if (a.instance_id != target || !a.box2d) continue;
        pred_boxes.push_back(bbox2d_of(pf.at("bbox2d")));
        gt_boxes.push_back(*a.box2d);
      }
    }
    const auto res = tracking_metrics(pred_boxes, gt_boxes);
    summary["auc"] = res.auc;
    summary["precision"] = res.precision;
    summary["precision_norm"] = res.precision_norm;
    summary["frames"] = pred_boxes.size();
  } else if (task == "traj") {
    // Predicted world-frame positions per instance; ground truth comes from
    // the clip's camera-frame centers mapped back to the world.
    const RigidTransform cam_to_world = clip.calib.rgb_camera.extrinsic.inverse();
    const double rate = clip.manifest.rate;
    json per_instance = json::array();
    for (const json& pi : pred.at("instances")) {
      const int id = pi.at("instance_id").get<int>();
      const int start = pi.at("start_frame").get<int>();
      std::vector<Vec3> p, g;
      for (const json& pos : pi.at("positions")) p.push_back(vec3_of(pos));
      for (std::size_t f = start; f < clip.frames.size() && g.size() < p.size(); ++f)
        for (const auto& a : clip.frames[f].annotations.instances)
          if (a.instance_id == id) g.push_back(cam_to_world.apply(a.box3d.center));
      std::vector<double> horizons;
      for (double h : {1.0, 3.0, 5.0})
        if (h * rate <= static_cast<double>(std::min(p.size(), g.size()))) horizons.push_back(h);
      if (horizons.empty()) continue;
      const auto res = ade_fde(p, g, horizons, rate);
      json entry{{"instance_id", id}};
      for (const auto& [h, v] : res.by_horizon) {
        entry["ade@" + std::to_string(static_cast<int>(h)) + "s"] = v.first;
        entry["fde@" + std::to_string(static_cast<int>(h)) + "s"] = v.second;
      }
      per_instance.push_back(entry);
    }
    summary["instances"] = per_instance;
  } else {
    throw std::runtime_error("unknown task: " + task);
  }

  std::cout << summary.dump(2) << "\n";
  return 0;
}

int cmd_fuse(const std::string& rgb_path, const std::string& ir_path,
             const std::string& points_path, const std::string& calib_path,
             const std::string& config_path, const std::string& out_path) {
  const FeatureGrid f_rgb = read_grid(rgb_path);
  const FeatureGrid f_ir = read_grid(ir_path);
  const LidarScan points = read_lidar_bin(points_path);
  const SensorCalibrations calib = calib_from_json(load_json_file(calib_path));

  FusionConfig cfg;
  if (!config_path.empty()) {
    const json j = load_json_file(config_path);
    cfg.radius = j.value("radius", cfg.radius);
    cfg.k_neighbors = j.value("k_neighbors", cfg.k_neighbors);
    if (j.contains("weights")) {
      const json& w = j.at("weights");
      cfg.weights.resize(w.size(), w[0].size());
      for (std::size_t r = 0; r < w.size(); ++r)
        for (std::size_t c = 0; c < w[r].size(); ++c) cfg.weights(r, c) = w[r][c].get<float>();
    }
    if (j.contains("bias")) {
      const json& b = j.at("bias");
      cfg.bias.resize(b.size());
      for (std::size_t i = 0; i < b.size(); ++i) cfg.bias(i) = b[i].get<float>();
    }
  }
  const int d = f_rgb.depth();
  if (cfg.weights.size() == 0) {
    // Default: plain averaging of the two branches.
    cfg.weights = Eigen::MatrixXf::Zero(d, 2 * d);
    cfg.weights.leftCols(d) = 0.5f * Eigen::MatrixXf::Identity(d, d);
    cfg.weights.rightCols(d) = 0.5f * Eigen::MatrixXf::Identity(d, d);
  }
  if (cfg.bias.size() == 0) cfg.bias = Eigen::VectorXf::Zero(cfg.weights.rows());

  std::vector<Vec3> world_points;
  world_points.reserve(points.returns.size());
  for (const auto& r : points.returns) world_points.emplace_back(r.x, r.y, r.z);

  const auto pairs = build_correspondences(world_points, calib.rgb_camera, calib.ir_camera);
  const FeatureGrid aligned =
      align_ir_features(f_ir, pairs, cfg, f_rgb.height(), f_rgb.width());
  write_grid(fuse_grids(f_rgb, aligned, cfg), out_path);
  std::cout << "correspondences: " << pairs.size() << "\nwrote " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multimodal low-altitude UAV scene simulator and benchmark toolkit"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("generate", "Generate synthetic clips");
  std::string gen_config, gen_out = "out", gen_weather;
  std::uint64_t gen_seed = 0;
  int gen_uavs = 0, gen_clips = 1;
  gen->add_option("--config", gen_config, "Scenario config JSON");
  gen->add_option("--seed", gen_seed, "Generation seed")->required();
  gen->add_option("--out", gen_out, "Output directory")->required();
  gen->add_option("--weather", gen_weather, "Weather condition override");
  gen->add_option("--uavs", gen_uavs, "Number of UAVs override");
  gen->add_option("--clips", gen_clips, "Number of clips");

  auto* stats = app.add_subcommand("stats", "Dataset statistics for a clip");
  std::string stats_dir, stats_out;
  stats->add_option("dir", stats_dir, "Clip directory")->required();
  stats->add_option("--out", stats_out, "Report output directory");

  auto* eval = app.add_subcommand("eval", "Evaluate predictions against a clip");
  std::string eval_task, eval_pred, eval_gt;
  eval->add_option("--task", eval_task, "pose|det2d|det3d|track|traj")->required();
  eval->add_option("--pred", eval_pred, "Prediction file (JSON)")->required();
  eval->add_option("--gt", eval_gt, "Ground-truth clip directory")->required();

  auto* fuse = app.add_subcommand("fuse", "LiDAR-guided cross-view grid fusion");
  std::string fu_rgb, fu_ir, fu_points, fu_calib, fu_config, fu_out;
  fuse->add_option("--rgb-grid", fu_rgb, "RGB feature grid (binary tensor)")->required();
  fuse->add_option("--ir-grid", fu_ir, "IR feature grid (binary tensor)")->required();
  fuse->add_option("--points", fu_points, "World points (.bin, 4 x float32)")->required();
  fuse->add_option("--calib", fu_calib, "Calibration JSON")->required();
  fuse->add_option("--config", fu_config, "Fusion config JSON");
  fuse->add_option("--out", fu_out, "Output grid path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed())
      return cmd_generate(gen_config, gen_seed, gen_out, gen_weather, gen_uavs, gen_clips);
    if (stats->parsed()) return cmd_stats(stats_dir, stats_out);
    if (eval->parsed()) return cmd_eval(eval_task, eval_pred, eval_gt);
    if (fuse->parsed()) return cmd_fuse(fu_rgb, fu_ir, fu_points, fu_calib, fu_config, fu_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
