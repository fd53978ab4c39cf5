#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace uavsim {

enum class WeatherCondition {
  ClearDay,
  ClearNight,
  RainDay,
  RainNight,
  FogDay,
  FogNight,
  SnowDay,
  SnowNight,
};

std::string_view weather_name(WeatherCondition c);
WeatherCondition weather_from_name(std::string_view name);

/// Visibility weight plus sensor-degradation parameters for one condition.
/// Clear is always the identity (weight 1, no dropout, no noise); fog is the
/// strongest degradation (weight 2.5). All values are overridable in config.
struct WeatherProfile {
  WeatherCondition condition = WeatherCondition::ClearDay;
  double visibility_weight = 1.0;
  double dropout_prob = 0.0;        // per-return drop probability
  double range_noise_sigma = 0.0;   // m
  double velocity_noise_sigma = 0.0;  // m/s

  bool is_identity() const {
    return dropout_prob == 0.0 && range_noise_sigma == 0.0 && velocity_noise_sigma == 0.0;
  }

  static WeatherProfile preset(WeatherCondition c);
};

}  // namespace uavsim
