#include "uavsim/weather.hpp"

#include <array>

namespace uavsim {
namespace {

struct Entry {
  WeatherCondition cond;
  std::string_view name;
  double weight;
  double dropout;
  double range_sigma;
  double vel_sigma;
};

// Clear is the identity; fog is the strongest degradation, matching the
// visibility-weight ordering. Dropout/noise values are toolkit defaults and
// overridable via config.
constexpr std::array<Entry, 8> kTable = {{
    {WeatherCondition::ClearDay, "clear_day", 1.0, 0.0, 0.0, 0.0},
    {WeatherCondition::ClearNight, "clear_night", 1.0, 0.0, 0.0, 0.0},
    {WeatherCondition::RainDay, "rain_day", 1.5, 0.10, 0.02, 0.05},
    {WeatherCondition::RainNight, "rain_night", 1.5, 0.10, 0.02, 0.05},
    {WeatherCondition::FogDay, "fog_day", 2.5, 0.30, 0.05, 0.10},
    {WeatherCondition::FogNight, "fog_night", 2.5, 0.30, 0.05, 0.10},
    {WeatherCondition::SnowDay, "snow_day", 2.0, 0.20, 0.05, 0.08},
    {WeatherCondition::SnowNight, "snow_night", 2.0, 0.20, 0.05, 0.08},
}};

}  // namespace

std::string_view weather_name(WeatherCondition c) {
  return kTable[static_cast<int>(c)].name;
}

WeatherCondition weather_from_name(std::string_view name) {
  for (const auto& e : kTable)
    if (e.name == name) return e.cond;
  throw std::invalid_argument("unknown weather condition: " + std::string(name));
}

WeatherProfile WeatherProfile::preset(WeatherCondition c) {
  const Entry& e = kTable[static_cast<int>(c)];
  return {e.cond, e.weight, e.dropout, e.range_sigma, e.vel_sigma};
}

}  // namespace uavsim
