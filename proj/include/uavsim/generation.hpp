#pragma once

#include "uavsim/annotation.hpp"
#include "uavsim/clip_io.hpp"
#include "uavsim/trajectory.hpp"
#include "uavsim/weather.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace uavsim {

/// Scene-level generation parameters. Defaults place the sensor rig at the
/// origin looking along +x with a slight upward tilt, and fly the UAVs on an
/// elliptical loop whose distances land mostly in the 20-60 m band.
struct ScenarioConfig {
  std::string scene = "default";
  WeatherCondition weather = WeatherCondition::ClearDay;
  double duration_s = 20.0;
  double rate = 15.0;
  int n_uavs = 3;                      // 1..7
  std::vector<std::string> uav_models;  // empty -> cycle through the 7 defaults

  // Ellipse defaults, jittered per UAV.
  double ellipse_a = 25.0;
  double ellipse_b = 12.0;
  double altitude = 30.0;
  double dh_bound = 4.0;
  int n_waypoints = 20;
  double anchor_forward_m = 30.0;  // ellipse center distance along +x
  double jitter_frac = 0.1;        // per-UAV relative jitter on a, b, altitude

  double camera_tilt_deg = 30.0;  // upward tilt of the whole sensor rig
  double ir_baseline_m = 0.3;     // IR camera lateral offset

  DifficultyThresholds thresholds;

  /// Sensor configs derived from the scenario (tilt applied to each pose).
  SensorCalibrations make_calibrations() const;
};

ScenarioConfig scenario_from_json_file(const std::filesystem::path& path);
std::string scenario_to_json_text(const ScenarioConfig& cfg);

/// Advances simulated time in ticks of 1/rate, samples every UAV pose, runs
/// all sensor models under the same tick, and writes one frame per tick.
/// Fully deterministic given (config, seed).
std::filesystem::path run_generation(const ScenarioConfig& cfg, std::uint64_t seed,
                                     const std::filesystem::path& out_dir,
                                     const std::string& clip_id = "clip_0");

}  // namespace uavsim
