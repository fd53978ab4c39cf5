#include "uavsim/annotation.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace uavsim {

std::array<Vec3, 8> BBox3D::corners() const {
  const double l = size[2], w = size[0], h = size[1];
  const Vec3 fwd = rotation.col(0) * (l / 2.0);
  const Vec3 left = rotation.col(1) * (w / 2.0);
  const Vec3 up = rotation.col(2) * (h / 2.0);
  std::array<Vec3, 8> out;
  int idx = 0;
  for (int sf : {-1, 1})
    for (int sl : {-1, 1})
      for (int su : {-1, 1}) out[idx++] = center + sf * fwd + sl * left + su * up;
  return out;
}

std::string_view difficulty_name(Difficulty d) {
  switch (d) {
    case Difficulty::Easy: return "easy";
    case Difficulty::Moderate: return "moderate";
    case Difficulty::Hard: return "hard";
  }
  return "?";
}

std::optional<BBox2D> project_bbox3d(const BBox3D& box, const CameraModel& cam) {
  double u_min = std::numeric_limits<double>::infinity();
  double v_min = std::numeric_limits<double>::infinity();
  double u_max = -std::numeric_limits<double>::infinity();
  double v_max = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (const Vec3& c : box.corners()) {
    if (c.z() <= 0.0) continue;
    any = true;
    const double u = cam.fx * c.x() / c.z() + cam.cx;
    const double v = cam.fy * c.y() / c.z() + cam.cy;
    u_min = std::min(u_min, u);
    v_min = std::min(v_min, v);
    u_max = std::max(u_max, u);
    v_max = std::max(v_max, v);
  }
  if (!any) return std::nullopt;
  BBox2D b;
  b.instance_id = box.instance_id;
  b.u_min = std::clamp(u_min, 0.0, static_cast<double>(cam.width));
  b.u_max = std::clamp(u_max, 0.0, static_cast<double>(cam.width));
  b.v_min = std::clamp(v_min, 0.0, static_cast<double>(cam.height));
  b.v_max = std::clamp(v_max, 0.0, static_cast<double>(cam.height));
  if (b.u_min >= b.u_max || b.v_min >= b.v_max) return std::nullopt;
  return b;
}

DifficultyRecord difficulty_score(double distance_m, double size_m,
                                  const WeatherProfile& weather,
                                  const DifficultyThresholds& thresholds) {
  if (size_m <= 0.0) throw std::invalid_argument("difficulty_score: size must be > 0");
  if (distance_m < 0.0) throw std::invalid_argument("difficulty_score: distance must be >= 0");
  DifficultyRecord rec;
  rec.distance_m = distance_m;
  rec.size_m = size_m;
  rec.visibility_weight = weather.visibility_weight;
  rec.score = distance_m / size_m * weather.visibility_weight;
  rec.level = rec.score < thresholds.easy_below     ? Difficulty::Easy
              : rec.score < thresholds.moderate_below ? Difficulty::Moderate
                                                      : Difficulty::Hard;
  return rec;
}

std::size_t Histogram::total() const {
  std::size_t n = 0;
  for (const auto& [bin, c] : counts) n += c;
  return n;
}

double circular_std_deg(std::span<const double> angles_deg) {
  if (angles_deg.empty()) return 0.0;
  double s = 0.0, c = 0.0;
  for (double a : angles_deg) {
    s += std::sin(deg2rad(a));
    c += std::cos(deg2rad(a));
  }
  const double r = std::hypot(s, c) / angles_deg.size();
  if (r <= 1e-300) return rad2deg(std::sqrt(2.0));  // uniform limit of sqrt(-2 ln R) capped
  const double std_rad = std::sqrt(std::max(0.0, -2.0 * std::log(std::min(r, 1.0))));
  return rad2deg(std_rad);
}

StatsReport compute_stats(std::span<const FrameAnnotation> frames) {
  if (frames.empty()) throw std::invalid_argument("compute_stats: no frames");
  StatsReport rep;
  rep.total_frames = frames.size();
  std::vector<double> rolls;
  std::vector<double> yaw_increments;
  std::map<int, double> last_yaw;  // instance -> previous frame yaw
  std::size_t in_20_60 = 0;

  for (const auto& frame : frames) {
    for (const auto& inst : frame.instances) {
      ++rep.total_instances;
      rep.distance.add(inst.difficulty.distance_m);
      if (inst.difficulty.distance_m >= 20.0 && inst.difficulty.distance_m <= 60.0)
        ++in_20_60;
      ++rep.class_counts[inst.class_name];
      rep.roll.add(inst.pose.roll_deg);
      rep.pitch.add(inst.pose.pitch_deg);
      rep.yaw.add(inst.pose.yaw_deg);
      ++rep.difficulty_counts[static_cast<int>(inst.difficulty.level)];
      rolls.push_back(inst.pose.roll_deg);
      if (auto it = last_yaw.find(inst.instance_id); it != last_yaw.end())
        yaw_increments.push_back(wrap_deg(inst.pose.yaw_deg - it->second));
      last_yaw[inst.instance_id] = inst.pose.yaw_deg;
    }
  }
  if (rep.total_instances == 0) throw std::invalid_argument("compute_stats: no instances");
  rep.circ_std_roll_deg = circular_std_deg(rolls);
  rep.circ_std_yaw_increment_deg = circular_std_deg(yaw_increments);
  rep.frac_distance_20_60 = static_cast<double>(in_20_60) / rep.total_instances;
  return rep;
}

namespace {

void write_histogram(const Histogram& h, const std::string& path, const char* value_name) {
  std::ofstream out(path);
  out << "bin_lo,bin_hi," << value_name << "\n";
  for (const auto& [bin, count] : h.counts)
    out << h.origin + bin * h.bin_width << "," << h.origin + (bin + 1) * h.bin_width << ","
        << count << "\n";
}

}  // namespace

void write_stats_csv(const StatsReport& report, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  write_histogram(report.distance, out_dir + "/distance_hist.csv", "count");
  write_histogram(report.roll, out_dir + "/roll_hist.csv", "count");
  write_histogram(report.pitch, out_dir + "/pitch_hist.csv", "count");
  write_histogram(report.yaw, out_dir + "/yaw_hist.csv", "count");
  {
    std::ofstream out(out_dir + "/class_counts.csv");
    out << "class,count\n";
    for (const auto& [name, count] : report.class_counts) out << name << "," << count << "\n";
  }
  {
    std::ofstream out(out_dir + "/difficulty.csv");
    out << "level,count\n";
    out << "easy," << report.difficulty_counts[0] << "\n";
    out << "moderate," << report.difficulty_counts[1] << "\n";
    out << "hard," << report.difficulty_counts[2] << "\n";
  }
  std::ofstream(out_dir + "/summary.txt") << stats_summary(report);
}

std::string stats_summary(const StatsReport& report) {
  std::ostringstream os;
  os << "frames: " << report.total_frames << "\n"
     << "instances: " << report.total_instances << "\n"
     << "distance in [20,60] m: " << 100.0 * report.frac_distance_20_60 << "%\n"
     << "circular std roll: " << report.circ_std_roll_deg << " deg\n"
     << "circular std yaw increment: " << report.circ_std_yaw_increment_deg << " deg\n"
     << "difficulty easy/moderate/hard: " << report.difficulty_counts[0] << "/"
     << report.difficulty_counts[1] << "/" << report.difficulty_counts[2] << "\n";
  return os.str();
}

}  // namespace uavsim
