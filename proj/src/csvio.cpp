#include "evade/harness/csvio.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace evade {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

namespace {

std::ofstream open_or_throw(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write: " + path);
  return out;
}

}  // namespace

void write_trajectory_csv(const std::string& path,
                          const EpisodeRecord& record) {
  std::ofstream out = open_or_throw(path);
  out << "t,aircraft_x,aircraft_y,aircraft_z,aircraft_speed,roll,pitch,"
         "heading,missile_x,missile_y,missile_z,missile_heading,"
         "missile_pitch,stage,elevator,aileron,rudder,throttle,";
  for (auto name : RewardBreakdown::term_names()) out << "reward_" << name << ",";
  out << "reward_total,range,los_rate,aircraft_load_g,missile_overload_g\n";
  for (const StepRow& row : record.rows) {
    out << format_number(row.t) << ',' << format_number(row.aircraft.position.x)
        << ',' << format_number(row.aircraft.position.y) << ','
        << format_number(row.aircraft.position.z) << ','
        << format_number(row.aircraft.speed) << ','
        << format_number(row.aircraft.roll) << ','
        << format_number(row.aircraft.pitch) << ','
        << format_number(row.aircraft.heading) << ','
        << format_number(row.missile.position.x) << ','
        << format_number(row.missile.position.y) << ','
        << format_number(row.missile.position.z) << ','
        << format_number(row.missile.heading) << ','
        << format_number(row.missile.pitch) << ','
        << (row.stage ? stage_name(*row.stage) : "-") << ','
        << format_number(row.action.elevator) << ','
        << format_number(row.action.aileron) << ','
        << format_number(row.action.rudder) << ','
        << format_number(row.action.throttle) << ',';
    for (double term : row.reward.terms()) out << format_number(term) << ',';
    out << format_number(row.reward.total) << ',' << format_number(row.range)
        << ',' << format_number(row.los_rate) << ','
        << format_number(row.aircraft_load_g) << ','
        << format_number(row.missile_overload_g) << '\n';
  }
}

void write_curve_csv(const std::string& path,
                     const std::vector<EpisodeCurvePoint>& curve) {
  std::ofstream out = open_or_throw(path);
  out << "episode,steps,accumulated_reward";
  for (auto name : RewardBreakdown::term_names()) out << ",mean_" << name;
  out << "\n";
  for (const EpisodeCurvePoint& point : curve) {
    out << point.episode << ',' << point.steps << ','
        << format_number(point.accumulated_reward);
    for (double term : point.mean_terms.terms()) out << ',' << format_number(term);
    out << "\n";
  }
}

}  // namespace evade
