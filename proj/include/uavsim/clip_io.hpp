#pragma once

#include "uavsim/annotation.hpp"
#include "uavsim/camera.hpp"
#include "uavsim/sensors.hpp"
#include "uavsim/trajectory.hpp"
#include "uavsim/weather.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace uavsim {

/// Per-clip sensor calibration set. The Euler-order tag is recorded so
/// downstream consumers are unambiguous about the (roll, pitch, yaw)
/// convention.
struct SensorCalibrations {
  CameraModel rgb_camera;
  CameraModel ir_camera;
  LidarConfig lidar;
  RadarConfig radar;
  std::string euler_order = "ZYX";
};

struct UavEntry {
  int instance_id = 0;
  UavSpec spec;
  std::uint64_t seed = 0;
};

struct ClipManifest {
  std::string clip_id;
  std::string scene;
  WeatherProfile weather;
  double duration_s = 20.0;
  double rate = 15.0;  // Hz
  int frame_count = 0;
  std::vector<UavEntry> uavs;
  std::string generator_config;  // config echo for provenance (JSON text)
};

/// One synchronized frame. Timestamps are integer tick counts at the clip
/// rate; every modality of a frame must carry the identical tick.
struct FrameRecord {
  int frame_index = 0;
  std::int64_t tick = 0;
  std::int64_t lidar_tick = 0;
  std::int64_t radar_tick = 0;
  std::int64_t annotation_tick = 0;
  std::uint64_t sync_token = 0;
  std::string lidar_file;  // relative path, .bin
  LidarScan lidar;         // payload, kept in memory
  RadarScan radar;
  FrameAnnotation annotations;
};

struct Clip {
  ClipManifest manifest;
  SensorCalibrations calib;
  std::vector<FrameRecord> frames;
};

/// Raised on any schema violation; the message names the offending frame and
/// field.
struct ClipFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

nlohmann::json calib_to_json(const SensorCalibrations& calib);
SensorCalibrations calib_from_json(const nlohmann::json& j);

/// Streams frames to a clip directory. The manifest is written last at
/// finalize() and acts as the commit marker; finalize() rejects empty clips.
class ClipWriter {
 public:
  ClipWriter(std::filesystem::path dir, ClipManifest manifest, SensorCalibrations calib);

  void append_frame(const FrameRecord& frame);
  void finalize();

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  ClipManifest manifest_;
  int written_ = 0;
  bool finalized_ = false;
};

/// Loads and validates a clip: strictly increasing ticks at 1/rate spacing,
/// per-frame cross-modality tick equality, payload lengths, frame count.
Clip read_clip(const std::filesystem::path& dir);

/// Inverse of read_clip; read(write(x)) == x byte-exactly for valid clips.
void write_clip(const Clip& clip, const std::filesystem::path& dir);

void write_lidar_bin(const LidarScan& scan, const std::filesystem::path& path);
LidarScan read_lidar_bin(const std::filesystem::path& path);

}  // namespace uavsim
