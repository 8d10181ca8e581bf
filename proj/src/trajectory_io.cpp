#include "fraclog/trajectory_io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string_view>

namespace fraclog {
namespace {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_real(std::string_view text) {
  const std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw std::runtime_error("trajectory csv: bad number '" + s + "'");
  return v;
}

constexpr std::string_view kBlowupKey = "# blowup_at=";
constexpr std::string_view kFailureKey = "# accuracy_failure_at=";

}  // namespace

void write_trajectory_csv(std::ostream& out, const Trajectory& traj,
                          const std::vector<std::string>& metadata) {
  for (const auto& line : metadata) out << "# " << line << '\n';
  out << "t,u\n";
  for (Eigen::Index k = 0; k < traj.size(); ++k) {
    out << format_real(traj.times[k]) << ',' << format_real(traj.values[k]) << '\n';
  }
  if (traj.status == RunStatus::BlewUp) {
    out << kBlowupKey << format_real(traj.times[traj.status_index]) << '\n';
  } else if (traj.status == RunStatus::AccuracyFailure) {
    out << kFailureKey << format_real(traj.step * static_cast<double>(traj.status_index)) << '\n';
  }
}

Trajectory read_trajectory_csv(std::istream& in) {
  std::vector<double> times, values;
  std::string line;
  bool header = false;
  RunStatus status = RunStatus::Completed;
  double failure_time = 0.0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line.starts_with(kBlowupKey)) status = RunStatus::BlewUp;
      if (line.starts_with(kFailureKey)) {
        status = RunStatus::AccuracyFailure;
        failure_time = parse_real(std::string_view(line).substr(kFailureKey.size()));
      }
      continue;
    }
    if (!header) {
      if (line != "t,u") throw std::runtime_error("trajectory csv: expected header 't,u'");
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error("trajectory csv: missing ','");
    times.push_back(parse_real(std::string_view(line).substr(0, comma)));
    values.push_back(parse_real(std::string_view(line).substr(comma + 1)));
  }
  if (!header) throw std::runtime_error("trajectory csv: no header");

  Trajectory traj;
  const auto n = static_cast<Eigen::Index>(times.size());
  traj.times = Eigen::Map<Eigen::VectorXd>(times.data(), n);
  traj.values = Eigen::Map<Eigen::VectorXd>(values.data(), n);
  traj.step = n > 1 ? times[1] - times[0] : 0.0;
  traj.status = status;
  if (status == RunStatus::AccuracyFailure) {
    traj.status_index = traj.step > 0.0 ? static_cast<Eigen::Index>(std::llround(failure_time / traj.step)) : n;
  } else {
    traj.status_index = n - 1;
  }
  return traj;
}

}  // namespace fraclog
