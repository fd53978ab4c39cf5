#include "uavsim/clip_io.hpp"

#include <nlohmann/json.hpp>

#include <fstream>

namespace uavsim {

using json = nlohmann::json;

namespace {

json mat4_to_json(const Mat4& m) {
  json a = json::array();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) a.push_back(m(r, c));
  return a;
}

Mat4 mat4_from_json(const json& a) {
  if (!a.is_array() || a.size() != 16) throw ClipFormatError("extrinsic must be 16 numbers");
  Mat4 m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m(r, c) = a[r * 4 + c].get<double>();
  return m;
}

json vec3_to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

Vec3 vec3_from_json(const json& a) { return {a[0].get<double>(), a[1].get<double>(), a[2].get<double>()}; }

json mat3_to_json(const Mat3& m) {
  json a = json::array();
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) a.push_back(m(r, c));
  return a;
}

Mat3 mat3_from_json(const json& a) {
  Mat3 m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = a[r * 3 + c].get<double>();
  return m;
}

json camera_to_json(const CameraModel& cam) {
  return json{{"frame", "SensorCam-RDF"},
              {"width", cam.width},
              {"height", cam.height},
              {"fx", cam.fx},
              {"fy", cam.fy},
              {"cx", cam.cx},
              {"cy", cam.cy},
              {"extrinsic", mat4_to_json(cam.extrinsic.matrix())}};
}

CameraModel camera_from_json(const json& j) {
  CameraModel cam;
  cam.width = j.at("width").get<int>();
  cam.height = j.at("height").get<int>();
  cam.fx = j.at("fx").get<double>();
  cam.fy = j.at("fy").get<double>();
  cam.cx = j.at("cx").get<double>();
  cam.cy = j.at("cy").get<double>();
  cam.extrinsic = RigidTransform::from_matrix(mat4_from_json(j.at("extrinsic")));
  return cam;
}

json weather_to_json(const WeatherProfile& w) {
  return json{{"condition", std::string(weather_name(w.condition))},
              {"visibility_weight", w.visibility_weight},
              {"dropout_prob", w.dropout_prob},
              {"range_noise_sigma", w.range_noise_sigma},
              {"velocity_noise_sigma", w.velocity_noise_sigma}};
}

WeatherProfile weather_from_json(const json& j) {
  WeatherProfile w;
  w.condition = weather_from_name(j.at("condition").get<std::string>());
  w.visibility_weight = j.at("visibility_weight").get<double>();
  w.dropout_prob = j.at("dropout_prob").get<double>();
  w.range_noise_sigma = j.at("range_noise_sigma").get<double>();
  w.velocity_noise_sigma = j.at("velocity_noise_sigma").get<double>();
  return w;
}

json annotation_to_json(const InstanceAnnotation& a) {
  json j{{"instance_id", a.instance_id},
         {"class", a.class_name},
         {"bbox3d",
          {{"center", vec3_to_json(a.box3d.center)},
           {"size", vec3_to_json(a.box3d.size)},
           {"rotation", mat3_to_json(a.box3d.rotation)}}},
         {"pose",
          {{"position", vec3_to_json(a.pose.position)},
           {"roll_deg", a.pose.roll_deg},
           {"pitch_deg", a.pose.pitch_deg},
           {"yaw_deg", a.pose.yaw_deg}}},
         {"difficulty",
          {{"distance_m", a.difficulty.distance_m},
           {"size_m", a.difficulty.size_m},
           {"visibility_weight", a.difficulty.visibility_weight},
           {"score", a.difficulty.score},
           {"level", std::string(difficulty_name(a.difficulty.level))}}}};
  if (a.box2d)
    j["bbox2d"] = json::array({a.box2d->u_min, a.box2d->v_min, a.box2d->u_max, a.box2d->v_max});
  else
    j["bbox2d"] = nullptr;
  return j;
}

InstanceAnnotation annotation_from_json(const json& j) {
  InstanceAnnotation a;
  a.instance_id = j.at("instance_id").get<int>();
  a.class_name = j.at("class").get<std::string>();
  const json& b3 = j.at("bbox3d");
  a.box3d.center = vec3_from_json(b3.at("center"));
  a.box3d.size = vec3_from_json(b3.at("size"));
  a.box3d.rotation = mat3_from_json(b3.at("rotation"));
  a.box3d.instance_id = a.instance_id;
  a.box3d.class_name = a.class_name;
  if (!j.at("bbox2d").is_null()) {
    const json& b2 = j.at("bbox2d");
    a.box2d = BBox2D{b2[0].get<double>(), b2[1].get<double>(), b2[2].get<double>(),
                     b2[3].get<double>(), a.instance_id};
  }
  const json& p = j.at("pose");
  a.pose.position = vec3_from_json(p.at("position"));
  a.pose.roll_deg = p.at("roll_deg").get<double>();
  a.pose.pitch_deg = p.at("pitch_deg").get<double>();
  a.pose.yaw_deg = p.at("yaw_deg").get<double>();
  const json& d = j.at("difficulty");
  a.difficulty.distance_m = d.at("distance_m").get<double>();
  a.difficulty.size_m = d.at("size_m").get<double>();
  a.difficulty.visibility_weight = d.at("visibility_weight").get<double>();
  a.difficulty.score = d.at("score").get<double>();
  const std::string level = d.at("level").get<std::string>();
  a.difficulty.level = level == "easy"       ? Difficulty::Easy
                       : level == "moderate" ? Difficulty::Moderate
                                             : Difficulty::Hard;
  return a;
}

json radar_return_to_json(const RadarReturn& r) {
  return json{{"range", r.range},
              {"azimuth_deg", r.azimuth_deg},
              {"elevation_deg", r.elevation_deg},
              {"radial_velocity", r.radial_velocity},
              {"target_id", r.target_id}};
}

RadarReturn radar_return_from_json(const json& j) {
  return {j.at("range").get<double>(), j.at("azimuth_deg").get<double>(),
          j.at("elevation_deg").get<double>(), j.at("radial_velocity").get<double>(),
          j.at("target_id").get<int>()};
}

json frame_to_json(const FrameRecord& f) {
  json radar = json::array();
  for (const auto& r : f.radar.returns) radar.push_back(radar_return_to_json(r));
  json anns = json::array();
  for (const auto& a : f.annotations.instances) anns.push_back(annotation_to_json(a));
  return json{{"frame_index", f.frame_index},
              {"tick", f.tick},
              {"sync",
               {{"lidar", f.lidar_tick}, {"radar", f.radar_tick}, {"annotation", f.annotation_tick}}},
              {"sync_token", f.sync_token},
              {"lidar_file", f.lidar_file},
              {"lidar_return_count", f.lidar.returns.size()},
              {"radar_returns", radar},
              {"annotations", anns}};
}

void write_json(const json& j, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ClipFormatError("cannot open for writing: " + path.string());
  out << j.dump(2) << "\n";
}

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ClipFormatError("cannot open: " + path.string());
  return json::parse(in);
}

json manifest_to_json(const ClipManifest& m) {
  json uavs = json::array();
  for (const auto& u : m.uavs)
    uavs.push_back(json{{"instance_id", u.instance_id},
                        {"model", u.spec.model},
                        {"mass_kg", u.spec.mass_kg},
                        {"dims_m", vec3_to_json(u.spec.dims_m)},
                        {"max_speed", u.spec.max_speed},
                        {"seed", u.seed}});
  return json{{"clip_id", m.clip_id},
              {"scene", m.scene},
              {"weather", weather_to_json(m.weather)},
              {"duration_s", m.duration_s},
              {"rate_hz", m.rate},
              {"frame_count", m.frame_count},
              {"uavs", uavs},
              {"generator_config", m.generator_config}};
}

ClipManifest manifest_from_json(const json& j) {
  ClipManifest m;
  m.clip_id = j.at("clip_id").get<std::string>();
  m.scene = j.at("scene").get<std::string>();
  m.weather = weather_from_json(j.at("weather"));
  m.duration_s = j.at("duration_s").get<double>();
  m.rate = j.at("rate_hz").get<double>();
  m.frame_count = j.at("frame_count").get<int>();
  for (const json& u : j.at("uavs")) {
    UavEntry e;
    e.instance_id = u.at("instance_id").get<int>();
    e.spec.model = u.at("model").get<std::string>();
    e.spec.mass_kg = u.at("mass_kg").get<double>();
    e.spec.dims_m = vec3_from_json(u.at("dims_m"));
    e.spec.max_speed = u.at("max_speed").get<double>();
    e.seed = u.at("seed").get<std::uint64_t>();
    m.uavs.push_back(std::move(e));
  }
  m.generator_config = j.value("generator_config", "");
  return m;
}

}  // namespace

json calib_to_json(const SensorCalibrations& calib) {
  return json{{"euler_order", calib.euler_order},
              {"rgb_camera", camera_to_json(calib.rgb_camera)},
              {"ir_camera", camera_to_json(calib.ir_camera)},
              {"lidar",
               {{"frame", "SensorLidar-FLU"},
                {"channels", calib.lidar.channels},
                {"hfov_deg", calib.lidar.hfov_deg},
                {"vfov_deg", calib.lidar.vfov_deg},
                {"rate_hz", calib.lidar.rate},
                {"points_per_second", calib.lidar.points_per_second},
                {"max_range_m", calib.lidar.max_range},
                {"pose", mat4_to_json(calib.lidar.pose.matrix())}}},
              {"radar",
               {{"frame", "SensorRadar-FRD"},
                {"hfov_deg", calib.radar.hfov_deg},
                {"vfov_deg", calib.radar.vfov_deg},
                {"max_range_m", calib.radar.max_range},
                {"points_per_second", calib.radar.points_per_second},
                {"rate_hz", calib.radar.rate},
                {"returns_per_target", calib.radar.returns_per_target},
                {"pose", mat4_to_json(calib.radar.pose.matrix())}}}};
}

SensorCalibrations calib_from_json(const json& j) {
  SensorCalibrations c;
  c.euler_order = j.at("euler_order").get<std::string>();
  c.rgb_camera = camera_from_json(j.at("rgb_camera"));
  c.ir_camera = camera_from_json(j.at("ir_camera"));
  const json& l = j.at("lidar");
  c.lidar.channels = l.at("channels").get<int>();
  c.lidar.hfov_deg = l.at("hfov_deg").get<double>();
  c.lidar.vfov_deg = l.at("vfov_deg").get<double>();
  c.lidar.rate = l.at("rate_hz").get<double>();
  c.lidar.points_per_second = l.at("points_per_second").get<double>();
  c.lidar.max_range = l.at("max_range_m").get<double>();
  c.lidar.pose = RigidTransform::from_matrix(mat4_from_json(l.at("pose")));
  const json& r = j.at("radar");
  c.radar.hfov_deg = r.at("hfov_deg").get<double>();
  c.radar.vfov_deg = r.at("vfov_deg").get<double>();
  c.radar.max_range = r.at("max_range_m").get<double>();
  c.radar.points_per_second = r.at("points_per_second").get<double>();
  c.radar.rate = r.at("rate_hz").get<double>();
  c.radar.returns_per_target = r.at("returns_per_target").get<int>();
  c.radar.pose = RigidTransform::from_matrix(mat4_from_json(r.at("pose")));
  return c;
}

void write_lidar_bin(const LidarScan& scan, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ClipFormatError("cannot open for writing: " + path.string());
  // Little-endian stream of 4 x float32 per return.
  out.write(reinterpret_cast<const char*>(scan.returns.data()),
            static_cast<std::streamsize>(scan.returns.size() * sizeof(LidarReturn)));
}

LidarScan read_lidar_bin(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw ClipFormatError("cannot open: " + path.string());
  const auto bytes = static_cast<std::size_t>(in.tellg());
  if (bytes % sizeof(LidarReturn) != 0)
    throw ClipFormatError("lidar payload length not a multiple of 16 bytes: " + path.string());
  LidarScan scan;
  scan.returns.resize(bytes / sizeof(LidarReturn));
  in.seekg(0);
  in.read(reinterpret_cast<char*>(scan.returns.data()), static_cast<std::streamsize>(bytes));
  return scan;
}

ClipWriter::ClipWriter(std::filesystem::path dir, ClipManifest manifest,
                       SensorCalibrations calib)
    : dir_(std::move(dir)), manifest_(std::move(manifest)) {
  std::filesystem::create_directories(dir_ / "frames");
  std::filesystem::create_directories(dir_ / "lidar");
  write_json(calib_to_json(calib), dir_ / "calib.json");
}

void ClipWriter::append_frame(const FrameRecord& frame) {
  if (finalized_) throw ClipFormatError("append_frame after finalize");
  write_lidar_bin(frame.lidar, dir_ / frame.lidar_file);
  write_json(frame_to_json(frame), dir_ / "frames" / (std::to_string(frame.frame_index) + ".json"));
  ++written_;
}

void ClipWriter::finalize() {
  if (written_ == 0) throw ClipFormatError("cannot finalize an empty clip");
  manifest_.frame_count = written_;
  write_json(manifest_to_json(manifest_), dir_ / "manifest.json");
  finalized_ = true;
}

Clip read_clip(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir))
    throw ClipFormatError("clip directory does not exist: " + dir.string());
  Clip clip;
  clip.manifest = manifest_from_json(load_json(dir / "manifest.json"));
  clip.calib = calib_from_json(load_json(dir / "calib.json"));

  clip.frames.reserve(clip.manifest.frame_count);
  for (int n = 0; n < clip.manifest.frame_count; ++n) {
    const json j = load_json(dir / "frames" / (std::to_string(n) + ".json"));
    FrameRecord f;
    f.frame_index = j.at("frame_index").get<int>();
    f.tick = j.at("tick").get<std::int64_t>();
    const json& sync = j.at("sync");
    f.lidar_tick = sync.at("lidar").get<std::int64_t>();
    f.radar_tick = sync.at("radar").get<std::int64_t>();
    f.annotation_tick = sync.at("annotation").get<std::int64_t>();
    f.sync_token = j.at("sync_token").get<std::uint64_t>();
    f.lidar_file = j.at("lidar_file").get<std::string>();

    const std::string where = "frame " + std::to_string(n);
    if (f.frame_index != n) throw ClipFormatError(where + ": frame_index mismatch");
    if (f.tick != n) throw ClipFormatError(where + ": tick must equal frame index");
    if (f.lidar_tick != f.tick) throw ClipFormatError(where + ": lidar timestamp mismatch");
    if (f.radar_tick != f.tick) throw ClipFormatError(where + ": radar timestamp mismatch");
    if (f.annotation_tick != f.tick)
      throw ClipFormatError(where + ": annotation timestamp mismatch");

    f.lidar = read_lidar_bin(dir / f.lidar_file);
    const auto declared = j.at("lidar_return_count").get<std::size_t>();
    if (declared != f.lidar.returns.size())
      throw ClipFormatError(where + ": lidar payload length (" +
                            std::to_string(f.lidar.returns.size()) + " returns) does not match "
                            "declared count " + std::to_string(declared));

    for (const json& r : j.at("radar_returns")) f.radar.returns.push_back(radar_return_from_json(r));
    f.annotations.frame_index = n;
    for (const json& a : j.at("annotations"))
      f.annotations.instances.push_back(annotation_from_json(a));
    clip.frames.push_back(std::move(f));
  }
  return clip;
}

void write_clip(const Clip& clip, const std::filesystem::path& dir) {
  ClipWriter writer(dir, clip.manifest, clip.calib);
  for (const auto& f : clip.frames) writer.append_frame(f);
  writer.finalize();
}

}  // namespace uavsim
