#include "fwmpair/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "fwmpair/error.hpp"
#include "fwmpair/presets.hpp"

namespace fwmpair {

namespace {

namespace pt = boost::property_tree;

[[noreturn]] void bad(const std::string& origin, const std::string& key, const std::string& what) {
  fail(ErrorKind::configuration, origin + ": " + key + ": " + what);
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

struct Reader {
  std::string origin;
  std::string key;
  std::string text;

  double number() const {
    const std::string t = trim(text);
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v)) bad(origin, key, "not a number: '" + text + "'");
    return v;
  }
  std::size_t count() const {
    const double v = number();
    if (v < 0.0 || v != std::floor(v) || v > 1e12) bad(origin, key, "not a non-negative integer: '" + text + "'");
    return static_cast<std::size_t>(v);
  }
  bool flag() const {
    const std::string t = trim(text);
    if (t == "true" || t == "yes" || t == "1" || t == "on") return true;
    if (t == "false" || t == "no" || t == "0" || t == "off") return false;
    bad(origin, key, "not a boolean: '" + text + "'");
  }
  std::vector<double> numbers() const {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (trim(item).empty()) continue;
      out.push_back(Reader{origin, key, item}.number());
    }
    return out;
  }
  std::string word() const { return trim(text); }
};

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

std::string fmt_list(const std::vector<double>& values) {
  std::string out;
  for (double v : values) out += (out.empty() ? "" : ", ") + fmt(v);
  return out;
}

Model parse_model(const Reader& r) {
  const std::string w = r.word();
  if (w == "analytic_jsa") return Model::analytic_jsa;
  if (w == "analytic_jta") return Model::analytic_jta;
  if (w == "ssf") return Model::ssf;
  bad(r.origin, r.key, "unknown model '" + w + "' (analytic_jsa, analytic_jta, ssf)");
}

PumpShape parse_shape(const Reader& r) {
  const std::string w = r.word();
  if (w == "gaussian") return PumpShape::gaussian;
  if (w == "square") return PumpShape::square;
  bad(r.origin, r.key, "unknown pump shape '" + w + "' (gaussian, square)");
}

FilterAxis parse_axis(const Reader& r) {
  const std::string w = r.word();
  if (w == "signal") return FilterAxis::signal;
  if (w == "idler") return FilterAxis::idler;
  bad(r.origin, r.key, "unknown axis '" + w + "' (signal, idler)");
}

using Handler = std::function<void(RunConfig&, const Reader&)>;
using Section = std::map<std::string, Handler>;

std::map<std::string, Section> schema() {
  std::map<std::string, Section> s;
  s["run"] = {
      {"model", [](RunConfig& c, const Reader& r) { c.model = parse_model(r); }},
      {"output", [](RunConfig& c, const Reader& r) { c.output_dir = r.word(); }},
      {"parallelism", [](RunConfig& c, const Reader& r) { c.parallelism = r.count(); }},
  };
  // [fiber] preset is applied before the section's other keys.
  s["fiber"] = {
      {"preset", [](RunConfig&, const Reader&) {}},
      {"length", [](RunConfig& c, const Reader& r) { c.fiber.length = r.number(); }},
      {"beta1_s", [](RunConfig& c, const Reader& r) { c.fiber.beta1_s = r.number(); }},
      {"beta1_i", [](RunConfig& c, const Reader& r) { c.fiber.beta1_i = r.number(); }},
      {"beta2_p", [](RunConfig& c, const Reader& r) { c.fiber.beta2_p = r.number(); }},
      {"beta2_s", [](RunConfig& c, const Reader& r) { c.fiber.beta2_s = r.number(); }},
      {"beta2_i", [](RunConfig& c, const Reader& r) { c.fiber.beta2_i = r.number(); }},
      {"gamma_p", [](RunConfig& c, const Reader& r) { c.fiber.gamma_p = r.number(); }},
      {"gamma_s", [](RunConfig& c, const Reader& r) { c.fiber.gamma_s = r.number(); }},
      {"gamma_i", [](RunConfig& c, const Reader& r) { c.fiber.gamma_i = r.number(); }},
      {"lambda_p", [](RunConfig& c, const Reader& r) { c.fiber.lambda_p0 = r.number(); }},
      {"lambda_s", [](RunConfig& c, const Reader& r) { c.fiber.lambda_s0 = r.number(); }},
      {"lambda_i", [](RunConfig& c, const Reader& r) { c.fiber.lambda_i0 = r.number(); }},
  };
  s["pump"] = {
      {"shape", [](RunConfig& c, const Reader& r) { c.pump.shape = parse_shape(r); }},
      {"tau", [](RunConfig& c, const Reader& r) { c.pump.tau = r.number(); }},
      {"bandwidth_nm", [](RunConfig& c, const Reader& r) { c.pump.bandwidth_nm = r.number(); }},
      {"duration", [](RunConfig& c, const Reader& r) { c.pump.duration = r.number(); }},
      {"edge_smoothing", [](RunConfig& c, const Reader& r) { c.pump.edge_smoothing = r.number(); }},
      {"prechirp_length", [](RunConfig& c, const Reader& r) { c.pump.prechirp_length = r.number(); }},
  };
  s["rates"] = {
      {"rates", [](RunConfig& c, const Reader& r) { c.rates = r.numbers(); }},
      {"powers", [](RunConfig& c, const Reader& r) { c.powers = r.numbers(); }},
  };
  s["grid"] = {
      {"n_points", [](RunConfig& c, const Reader& r) { c.grid.n_points = r.count(); }},
      {"dt", [](RunConfig& c, const Reader& r) { c.grid.dt = r.number(); }},
      {"d_omega", [](RunConfig& c, const Reader& r) { c.grid.d_omega = r.number(); }},
      {"pump_points", [](RunConfig& c, const Reader& r) { c.grid.pump_points = r.count(); }},
      {"pump_dt", [](RunConfig& c, const Reader& r) { c.grid.pump_dt = r.number(); }},
      {"margin", [](RunConfig& c, const Reader& r) { c.grid.margin = r.number(); }},
      {"window_multiple", [](RunConfig& c, const Reader& r) { c.grid.window_multiple = r.number(); }},
  };
  s["ssf"] = {
      {"steps", [](RunConfig& c, const Reader& r) { c.ssf.n_steps = r.count(); }},
      {"step_margin", [](RunConfig& c, const Reader& r) { c.ssf.step_margin = r.number(); }},
      {"include_beta2", [](RunConfig& c, const Reader& r) { c.ssf.include_beta2 = r.flag(); }},
      {"pump_spm", [](RunConfig& c, const Reader& r) { c.ssf.pump_spm = r.flag(); }},
      {"pair_xpm", [](RunConfig& c, const Reader& r) { c.ssf.pair_xpm = r.flag(); }},
      {"rate_tolerance", [](RunConfig& c, const Reader& r) { c.ssf.rate_tolerance = r.number(); }},
  };
  s["jsa"] = {
      {"include_beta2", [](RunConfig& c, const Reader& r) { c.jsa.include_beta2 = r.flag(); }},
      {"pump_slices", [](RunConfig& c, const Reader& r) { c.jsa.pump_slices = r.count(); }},
      {"cw_shift", [](RunConfig& c, const Reader& r) { c.jsa_cw_shift = r.flag(); }},
  };
  s["filter"] = {
      {"axis", [](RunConfig& c, const Reader& r) { c.filter.value().axis = parse_axis(r); }},
      {"center",
       [](RunConfig& c, const Reader& r) {
         if (r.word() == "auto") {
           c.filter.value().center.reset();
         } else {
           c.filter.value().center = r.number();
         }
       }},
      {"widths", [](RunConfig& c, const Reader& r) { c.filter.value().widths = r.numbers(); }},
  };
  s["optimize"] = {
      {"lower", [](RunConfig& c, const Reader& r) { c.optimize.lower = r.number(); }},
      {"upper", [](RunConfig& c, const Reader& r) { c.optimize.upper = r.number(); }},
      {"tolerance", [](RunConfig& c, const Reader& r) { c.optimize.tolerance = r.number(); }},
      {"scan_points", [](RunConfig& c, const Reader& r) { c.optimize.scan_points = r.count(); }},
  };
  return s;
}

}  // namespace

const char* to_string(Model model) {
  switch (model) {
    case Model::analytic_jsa: return "analytic_jsa";
    case Model::analytic_jta: return "analytic_jta";
    case Model::ssf: return "ssf";
  }
  return "?";
}

const char* to_string(PumpShape shape) { return shape == PumpShape::gaussian ? "gaussian" : "square"; }

void RunConfig::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) fail(ErrorKind::configuration, what);
  };
  fiber.validate();
  if (pump.shape == PumpShape::gaussian) {
    require((pump.tau > 0.0) != (pump.bandwidth_nm > 0.0), "gaussian pump needs exactly one of tau and bandwidth_nm");
  } else {
    require(pump.duration > 0.0, "square pump needs a positive duration");
    require(pump.edge_smoothing >= 0.0, "edge_smoothing must be non-negative");
  }
  require(rates.empty() || powers.empty(), "give rates or powers, not both");
  for (double r : rates) require(r >= 0.0 && r < 1.0, "rates must lie in [0, 1)");
  for (double p : powers) require(p >= 0.0, "powers must be non-negative");
  require(grid.n_points >= 8, "grid n_points must be at least 8");
  require(grid.dt >= 0.0 && grid.d_omega >= 0.0 && grid.pump_dt >= 0.0, "grid steps must be non-negative");
  require(grid.margin >= 4.0, "grid margin must be at least 4 pump durations");
  require(grid.window_multiple >= 4.0, "spectral window must span at least 4 phase-matching bandwidths");
  require(ssf.step_margin >= 1.0, "ssf step_margin must be at least 1");
  require(ssf.rate_tolerance > 0.0 && ssf.rate_tolerance < 0.5, "ssf rate_tolerance must lie in (0, 0.5)");
  require(optimize.tolerance > 0.0 && optimize.tolerance < 0.1, "optimize tolerance must lie in (0, 0.1)");
  require(optimize.lower >= 0.0 && optimize.upper >= 0.0, "optimize bracket must be non-negative");
  require(optimize.lower == 0.0 || optimize.upper == 0.0 || optimize.lower < optimize.upper,
          "optimize lower must be below upper");
  require(parallelism >= 1, "parallelism must be at least 1");
  if (filter) {
    for (double w : filter->widths) require(w > 0.0, "filter widths must be positive");
  }
}

RunConfig preset_config(const std::string& preset) {
  RunConfig cfg;
  cfg.preset = preset;
  cfg.fiber = find_preset(preset).params;
  return cfg;
}

RunConfig parse_config(std::istream& in, const std::string& origin) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    fail(ErrorKind::configuration, origin + ": " + e.what());
  }

  RunConfig cfg;
  if (auto fiber = tree.get_child_optional("fiber")) {
    if (auto name = fiber->get_optional<std::string>("preset")) {
      cfg.preset = trim(*name);
      cfg.fiber = find_preset(cfg.preset).params;
    }
  }
  if (tree.get_child_optional("filter")) cfg.filter = FilterConfig{};

  const FiberParams base = cfg.fiber;
  const auto sections = schema();
  for (const auto& [section_name, section] : tree) {
    if (section_name == "meta") continue;
    const auto found = sections.find(section_name);
    if (found == sections.end() || section.data() != "") {
      fail(ErrorKind::configuration, origin + ": unknown section or top-level key '" + section_name + "'");
    }
    for (const auto& [key, value] : section) {
      const auto handler = found->second.find(key);
      if (handler == found->second.end()) {
        fail(ErrorKind::configuration, origin + ": unknown key '" + key + "' in [" + section_name + "]");
      }
      handler->second(cfg, Reader{origin, section_name + "." + key, value.data()});
    }
  }

  // Derived fibre quantities follow edited inputs unless set explicitly.
  if (auto fiber = tree.get_child_optional("fiber")) {
    const bool carriers_moved = cfg.fiber.lambda_p0 != base.lambda_p0 || cfg.fiber.lambda_s0 != base.lambda_s0;
    if (carriers_moved && !fiber->get_optional<std::string>("lambda_i")) {
      cfg.fiber.lambda_i0 = FiberParams::conjugate_wavelength(cfg.fiber.lambda_p0, cfg.fiber.lambda_s0);
    }
    if (cfg.fiber.gamma_p != base.gamma_p && base.gamma_p > 0.0) {
      const double scale = cfg.fiber.gamma_p / base.gamma_p;
      if (!fiber->get_optional<std::string>("gamma_s")) cfg.fiber.gamma_s = base.gamma_s * scale;
      if (!fiber->get_optional<std::string>("gamma_i")) cfg.fiber.gamma_i = base.gamma_i * scale;
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::io, "cannot open config file '" + path + "'");
  return parse_config(in, path);
}

void write_config(std::ostream& out, const RunConfig& cfg) {
  const FiberParams& f = cfg.fiber;
  out << "[run]\n"
      << "model = " << to_string(cfg.model) << "\n"
      << "output = " << cfg.output_dir << "\n"
      << "parallelism = " << cfg.parallelism << "\n\n";
  out << "[fiber]\n";
  if (!cfg.preset.empty()) out << "preset = " << cfg.preset << "\n";
  out << "length = " << fmt(f.length) << "\n"
      << "beta1_s = " << fmt(f.beta1_s) << "\nbeta1_i = " << fmt(f.beta1_i) << "\n"
      << "beta2_p = " << fmt(f.beta2_p) << "\nbeta2_s = " << fmt(f.beta2_s) << "\nbeta2_i = " << fmt(f.beta2_i) << "\n"
      << "gamma_p = " << fmt(f.gamma_p) << "\ngamma_s = " << fmt(f.gamma_s) << "\ngamma_i = " << fmt(f.gamma_i) << "\n"
      << "lambda_p = " << fmt(f.lambda_p0) << "\nlambda_s = " << fmt(f.lambda_s0) << "\nlambda_i = " << fmt(f.lambda_i0)
      << "\n\n";
  out << "[pump]\n"
      << "shape = " << to_string(cfg.pump.shape) << "\n";
  if (cfg.pump.tau > 0.0) out << "tau = " << fmt(cfg.pump.tau) << "\n";
  if (cfg.pump.bandwidth_nm > 0.0) out << "bandwidth_nm = " << fmt(cfg.pump.bandwidth_nm) << "\n";
  if (cfg.pump.duration > 0.0) out << "duration = " << fmt(cfg.pump.duration) << "\n";
  out << "edge_smoothing = " << fmt(cfg.pump.edge_smoothing) << "\n"
      << "prechirp_length = " << fmt(cfg.pump.prechirp_length) << "\n\n";
  out << "[rates]\n";
  if (!cfg.rates.empty()) out << "rates = " << fmt_list(cfg.rates) << "\n";
  if (!cfg.powers.empty()) out << "powers = " << fmt_list(cfg.powers) << "\n";
  out << "\n[grid]\n"
      << "n_points = " << cfg.grid.n_points << "\n"
      << "dt = " << fmt(cfg.grid.dt) << "\n"
      << "d_omega = " << fmt(cfg.grid.d_omega) << "\n"
      << "pump_points = " << cfg.grid.pump_points << "\n"
      << "pump_dt = " << fmt(cfg.grid.pump_dt) << "\n"
      << "margin = " << fmt(cfg.grid.margin) << "\n"
      << "window_multiple = " << fmt(cfg.grid.window_multiple) << "\n\n";
  out << "[ssf]\n"
      << "steps = " << cfg.ssf.n_steps << "\n"
      << "step_margin = " << fmt(cfg.ssf.step_margin) << "\n"
      << "include_beta2 = " << (cfg.ssf.include_beta2 ? "true" : "false") << "\n"
      << "pump_spm = " << (cfg.ssf.pump_spm ? "true" : "false") << "\n"
      << "pair_xpm = " << (cfg.ssf.pair_xpm ? "true" : "false") << "\n"
      << "rate_tolerance = " << fmt(cfg.ssf.rate_tolerance) << "\n\n";
  out << "[jsa]\n"
      << "include_beta2 = " << (cfg.jsa.include_beta2 ? "true" : "false") << "\n"
      << "pump_slices = " << cfg.jsa.pump_slices << "\n"
      << "cw_shift = " << (cfg.jsa_cw_shift ? "true" : "false") << "\n\n";
  if (cfg.filter) {
    out << "[filter]\n"
        << "axis = " << (cfg.filter->axis == FilterAxis::signal ? "signal" : "idler") << "\n"
        << "center = " << (cfg.filter->center ? fmt(*cfg.filter->center) : std::string("auto")) << "\n";
    if (!cfg.filter->widths.empty()) out << "widths = " << fmt_list(cfg.filter->widths) << "\n";
    out << "\n";
  }
  out << "[optimize]\n"
      << "lower = " << fmt(cfg.optimize.lower) << "\n"
      << "upper = " << fmt(cfg.optimize.upper) << "\n"
      << "tolerance = " << fmt(cfg.optimize.tolerance) << "\n"
      << "scan_points = " << cfg.optimize.scan_points << "\n";
}

}  // namespace fwmpair
