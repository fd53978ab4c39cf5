#include "uavsim/generation.hpp"

#include "uavsim/frames.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <random>

namespace uavsim {

using json = nlohmann::json;

namespace {

/// Sensor-FLU to world rotation for a rig looking along +x, tilted up.
Mat3 rig_rotation(double tilt_deg) {
  const double phi = deg2rad(tilt_deg);
  const Vec3 fwd(std::cos(phi), 0.0, std::sin(phi));
  const Vec3 left(0.0, 1.0, 0.0);
  const Vec3 up = fwd.cross(left);
  Mat3 r;
  r.col(0) = fwd;
  r.col(1) = left;
  r.col(2) = up;
  return r;
}

}  // namespace

SensorCalibrations ScenarioConfig::make_calibrations() const {
  SensorCalibrations calib;
  const Mat3 rig = rig_rotation(camera_tilt_deg);

  auto camera_at = [&](const Vec3& pos) {
    CameraModel cam = intrinsics_from_fov(1280, 720, 90.0);
    // world -> camera RDF: re-label the rig FLU axes, then invert the mount.
    cam.extrinsic.rotation = to_canonical_matrix(Frame::SensorCamRdf).transpose() * rig.transpose();
    cam.extrinsic.translation = -(cam.extrinsic.rotation * pos);
    return cam;
  };
  calib.rgb_camera = camera_at({0.0, 0.0, 1.5});
  calib.ir_camera = camera_at({0.0, -ir_baseline_m, 1.5});

  calib.lidar.rate = rate;
  calib.lidar.pose.rotation = rig;
  calib.lidar.pose.translation = {0.0, 0.0, 1.6};

  calib.radar.rate = rate;
  calib.radar.pose.rotation = rig * to_canonical_matrix(Frame::SensorRadarFrd);
  calib.radar.pose.translation = {0.0, 0.0, 1.4};
  return calib;
}

ScenarioConfig scenario_from_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario config: " + path.string());
  const json j = json::parse(in);
  ScenarioConfig cfg;
  cfg.scene = j.value("scene", cfg.scene);
  if (j.contains("weather")) cfg.weather = weather_from_name(j.at("weather").get<std::string>());
  cfg.duration_s = j.value("duration_s", cfg.duration_s);
  cfg.rate = j.value("rate_hz", cfg.rate);
  cfg.n_uavs = j.value("n_uavs", cfg.n_uavs);
  if (j.contains("uav_models")) cfg.uav_models = j.at("uav_models").get<std::vector<std::string>>();
  cfg.ellipse_a = j.value("ellipse_a", cfg.ellipse_a);
  cfg.ellipse_b = j.value("ellipse_b", cfg.ellipse_b);
  cfg.altitude = j.value("altitude", cfg.altitude);
  cfg.dh_bound = j.value("dh_bound", cfg.dh_bound);
  cfg.n_waypoints = j.value("n_waypoints", cfg.n_waypoints);
  cfg.anchor_forward_m = j.value("anchor_forward_m", cfg.anchor_forward_m);
  cfg.jitter_frac = j.value("jitter_frac", cfg.jitter_frac);
  cfg.camera_tilt_deg = j.value("camera_tilt_deg", cfg.camera_tilt_deg);
  cfg.ir_baseline_m = j.value("ir_baseline_m", cfg.ir_baseline_m);
  cfg.thresholds.easy_below = j.value("difficulty_easy_below", cfg.thresholds.easy_below);
  cfg.thresholds.moderate_below =
      j.value("difficulty_moderate_below", cfg.thresholds.moderate_below);
  return cfg;
}

std::string scenario_to_json_text(const ScenarioConfig& cfg) {
  json j{{"scene", cfg.scene},
         {"weather", std::string(weather_name(cfg.weather))},
         {"duration_s", cfg.duration_s},
         {"rate_hz", cfg.rate},
         {"n_uavs", cfg.n_uavs},
         {"uav_models", cfg.uav_models},
         {"ellipse_a", cfg.ellipse_a},
         {"ellipse_b", cfg.ellipse_b},
         {"altitude", cfg.altitude},
         {"dh_bound", cfg.dh_bound},
         {"n_waypoints", cfg.n_waypoints},
         {"anchor_forward_m", cfg.anchor_forward_m},
         {"jitter_frac", cfg.jitter_frac},
         {"camera_tilt_deg", cfg.camera_tilt_deg},
         {"ir_baseline_m", cfg.ir_baseline_m},
         {"difficulty_easy_below", cfg.thresholds.easy_below},
         {"difficulty_moderate_below", cfg.thresholds.moderate_below}};
  return j.dump();
}

std::filesystem::path run_generation(const ScenarioConfig& cfg, std::uint64_t seed,
                                     const std::filesystem::path& out_dir,
                                     const std::string& clip_id) {
  if (cfg.n_uavs < 1 || cfg.n_uavs > 7)
    throw std::invalid_argument("n_uavs must be in [1, 7]");
  if (cfg.duration_s <= 0.0 || cfg.rate <= 0.0)
    throw std::invalid_argument("duration and rate must be > 0");

  const WeatherProfile weather = WeatherProfile::preset(cfg.weather);
  const SensorCalibrations calib = cfg.make_calibrations();
  const int n_frames = static_cast<int>(std::lround(cfg.duration_s * cfg.rate));

  ClipManifest manifest;
  manifest.clip_id = clip_id;
  manifest.scene = cfg.scene;
  manifest.weather = weather;
  manifest.duration_s = cfg.duration_s;
  manifest.rate = cfg.rate;
  manifest.generator_config = scenario_to_json_text(cfg);

  // Per-UAV tracks, seeds derived by hashing (scene seed, uav id).
  std::vector<PoseTrack> tracks;
  std::vector<UavSpec> specs;
  for (int u = 0; u < cfg.n_uavs; ++u) {
    const std::uint64_t uav_seed = derive_seed(seed, static_cast<std::uint64_t>(u));
    const UavSpec& spec = cfg.uav_models.empty()
                              ? default_uav_specs()[u % default_uav_specs().size()]
                              : uav_spec(cfg.uav_models[u % cfg.uav_models.size()]);

    std::mt19937_64 rng(uav_seed);
    std::uniform_real_distribution<double> jitter(1.0 - cfg.jitter_frac, 1.0 + cfg.jitter_frac);
    TrajectoryConfig traj;
    traj.a = cfg.ellipse_a * jitter(rng);
    traj.b = cfg.ellipse_b * jitter(rng);
    if (traj.b >= traj.a) traj.b = traj.a * 0.6;
    traj.h0 = cfg.altitude * jitter(rng);
    traj.dh_bound = cfg.dh_bound;
    traj.n_waypoints = cfg.n_waypoints;
    traj.anchor.translation = {cfg.anchor_forward_m, 0.0, 0.0};
    traj.seed = derive_seed(uav_seed, 0xA11);

    MotionParams motion;
    motion.closed = true;
    motion.n_samples = n_frames;

    tracks.push_back(sample_poses(generate_waypoints(traj), spec, cfg.rate,
                                  derive_seed(uav_seed, 0xB22), motion));
    tracks.back().uav_id = u;
    specs.push_back(spec);
    manifest.uavs.push_back({u, spec, uav_seed});
  }

  const std::filesystem::path clip_dir = out_dir / clip_id;
  ClipWriter writer(clip_dir, manifest, calib);

  for (int tick = 0; tick < n_frames; ++tick) {
    std::vector<OrientedBox> boxes;
    std::vector<RadarTargetState> radar_targets;
    FrameRecord frame;
    frame.frame_index = tick;
    frame.tick = tick;
    frame.lidar_tick = tick;
    frame.radar_tick = tick;
    frame.annotation_tick = tick;
    frame.sync_token = splitmix64(derive_seed(seed, static_cast<std::uint64_t>(tick)));
    frame.lidar_file = "lidar/" + std::to_string(tick) + ".bin";
    frame.annotations.frame_index = tick;

    for (int u = 0; u < cfg.n_uavs; ++u) {
      const PoseSample& smp = tracks[u].samples[tick];
      const Mat3 r_wb = smp.pose.rotation();

      OrientedBox box;
      box.center = smp.pose.position;
      box.rotation = r_wb;
      box.size = specs[u].dims_m;  // (L, W, H) along (forward, left, up)
      boxes.push_back(box);
      radar_targets.push_back({smp.pose.position, smp.velocity});

      InstanceAnnotation ann;
      ann.instance_id = u;
      ann.class_name = specs[u].model;
      ann.box3d.center = calib.rgb_camera.extrinsic.apply(smp.pose.position);
      ann.box3d.rotation = calib.rgb_camera.extrinsic.rotation * r_wb;
      ann.box3d.size = {specs[u].dims_m.y(), specs[u].dims_m.z(), specs[u].dims_m.x()};
      ann.box3d.instance_id = u;
      ann.box3d.class_name = specs[u].model;
      ann.box2d = project_bbox3d(ann.box3d, calib.rgb_camera);
      // Position in the camera frame; attitude angles in the world frame.
      ann.pose = smp.pose;
      ann.pose.position = ann.box3d.center;
      ann.difficulty = difficulty_score(ann.box3d.center.norm(), specs[u].max_dim(), weather,
                                        cfg.thresholds);
      frame.annotations.instances.push_back(std::move(ann));
    }

    frame.lidar = lidar_scan(calib.lidar, boxes, 0.0, weather,
                             derive_seed(derive_seed(seed, 1), static_cast<std::uint64_t>(tick)));
    frame.radar = radar_scan(calib.radar, radar_targets, weather,
                             derive_seed(derive_seed(seed, 2), static_cast<std::uint64_t>(tick)));
    writer.append_frame(frame);
  }
  writer.finalize();
  return clip_dir;
}

}  // namespace uavsim
