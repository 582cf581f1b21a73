#include "fwmpair/export.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

#include "fwmpair/error.hpp"
#include "fwmpair/presets.hpp"

namespace fwmpair {

namespace {

namespace fs = std::filesystem;

void write_atomically(const std::string& path, const std::function<void(std::ostream&)>& body) {
  const std::string temporary = path + ".tmp";
  {
    std::ofstream out(temporary, std::ios::trunc);
    if (!out) fail(ErrorKind::io, "cannot write '" + temporary + "'");
    out << std::setprecision(17);
    body(out);
    out.flush();
    if (!out) fail(ErrorKind::io, "write failed for '" + temporary + "'");
  }
  std::error_code ec;
  fs::rename(temporary, path, ec);
  if (ec) fail(ErrorKind::io, "cannot move '" + temporary + "' to '" + path + "': " + ec.message());
}

std::string csv_text(const std::string& s) {
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

void write_axis(const std::string& path, const AxisGrid& axis) {
  const bool time = std::holds_alternative<TemporalGrid>(axis);
  const Eigen::VectorXd coords = axis_coordinates(axis);
  write_atomically(path, [&](std::ostream& out) {
    out << (time ? "time_s" : "detuning_rad_per_s") << "\n";
    for (Eigen::Index k = 0; k < coords.size(); ++k) out << coords(k) << "\n";
  });
}

}  // namespace

void ensure_directory(const std::string& path) {
  std::error_code ec;
  fs::create_directories(path, ec);
  if (ec) fail(ErrorKind::io, "cannot create directory '" + path + "': " + ec.message());
}

void export_rate_table(const std::string& path, const std::vector<RateRow>& rows) {
  write_atomically(path, [&](std::ostream& out) {
    out << "target_rate,rate,peak_power_W,purity,schmidt_number,visibility_low,error\n";
    for (const RateRow& r : rows) {
      out << r.target_rate << "," << r.rate << "," << r.peak_power << "," << r.purity << "," << r.schmidt_number << ","
          << r.visibility_low << "," << csv_text(r.error) << "\n";
    }
  });
}

void export_tau_trace(const std::string& path, const TauOptimum& optimum) {
  write_atomically(path, [&](std::ostream& out) {
    out << "duration_s,purity\n";
    for (const TauSample& s : optimum.trace) out << s.duration << "," << s.purity << "\n";
  });
}

void export_filter_curves(const std::string& path, const std::vector<FilterCurve>& curves) {
  write_atomically(path, [&](std::ostream& out) {
    out << "rate,center_rad_per_s,width_rad_per_s,transmission,effective_rate,purity\n";
    for (const FilterCurve& c : curves) {
      for (const FilterPoint& p : c.points) {
        out << c.rate << "," << c.center << "," << p.width << "," << p.transmission << "," << p.effective_rate << ","
            << p.purity << "\n";
      }
    }
  });
}

void export_magnitude(const std::string& stem, const JointAmplitude& amplitude) {
  amplitude.validate();
  write_atomically(stem + ".csv", [&](std::ostream& out) {
    const Eigen::MatrixXd magnitude = amplitude.matrix.cwiseAbs();
    for (Eigen::Index j = 0; j < magnitude.rows(); ++j) {
      for (Eigen::Index k = 0; k < magnitude.cols(); ++k) out << (k ? "," : "") << magnitude(j, k);
      out << "\n";
    }
  });
  write_axis(stem + "_signal_axis.csv", amplitude.signal_axis);
  write_axis(stem + "_idler_axis.csv", amplitude.idler_axis);
}

void export_metadata(const std::string& path, const ResolvedRun& run, const std::map<std::string, std::string>& extra) {
  write_atomically(path, [&](std::ostream& out) {
    write_config(out, run.config);
    out << "\n[meta]\n"
        << "tool_version = " << FWMPAIR_VERSION << "\n";
    if (!run.config.preset.empty()) out << "preset_version = " << find_preset(run.config.preset).version << "\n";
    out << "pump_duration_s = " << run.duration << "\n"
        << "signal_time_center_s = " << run.signal_time.t_center << "\n"
        << "idler_time_center_s = " << run.idler_time.t_center << "\n"
        << "signal_d_omega = " << run.signal_freq.d_omega << "\n"
        << "idler_d_omega = " << run.idler_freq.d_omega << "\n"
        << "randomness = none\n";
    for (const auto& [key, value] : extra) out << key << " = " << value << "\n";
  });
}

}  // namespace fwmpair
