#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fwmpair/analytic_jsa.hpp"
#include "fwmpair/analytic_jta.hpp"
#include "fwmpair/fiber.hpp"
#include "fwmpair/filtering.hpp"

namespace fwmpair {

enum class Model { analytic_jsa, analytic_jta, ssf };
enum class PumpShape { gaussian, square };

const char* to_string(Model model);
const char* to_string(PumpShape shape);

struct PumpSpec {
  PumpShape shape = PumpShape::gaussian;
  /// Gaussian: exactly one of tau (s) and bandwidth_nm is set.
  double tau = 0.0;
  double bandwidth_nm = 0.0;
  /// Square: full width (s) and raised-cosine edge width (s).
  double duration = 0.0;
  double edge_smoothing = 0.0;
  /// Linear pre-dispersion with the fibre's beta2_p over this length (m);
  /// -L/2 pre-compensates half the fibre.
  double prechirp_length = 0.0;
};

/// Zero means "resolve automatically"; resolved values are written back by
/// `resolve` so an exported config reruns bit-for-bit.
struct GridSpec {
  std::size_t n_points = 512;
  double dt = 0.0;       // JTA and SSF time step
  double d_omega = 0.0;  // analytic JSA step
  std::size_t pump_points = 0;
  double pump_dt = 0.0;  // pump grid for the analytic JSA
  /// Clear time between the walk-off region and the window edge, in pump
  /// durations.
  double margin = 4.0;
  /// Analytic JSA window per walking-off axis, in phase-matching bandwidths
  /// 2 pi / (|beta1| L).
  double window_multiple = 6.0;
};

struct SsfSpec {
  std::size_t n_steps = 0;
  double step_margin = 2.0;
  bool include_beta2 = true;
  bool pump_spm = true;
  bool pair_xpm = true;
  double rate_tolerance = 0.01;
};

struct FilterConfig {
  FilterAxis axis = FilterAxis::idler;
  std::optional<double> center;
  std::vector<double> widths;  // rad/s; empty: one bin to the full window
};

struct OptimizeSpec {
  double lower = 0.0;  // s; 0: 0.2 x the configured duration
  double upper = 0.0;  // s; 0: 5 x
  double tolerance = 1e-3;
  /// > 0: evaluate this many log-spaced points first and search around the
  /// best, for objectives that are not unimodal.
  std::size_t scan_points = 0;
};

struct RunConfig {
  Model model = Model::analytic_jta;
  std::string preset;  // empty: fibre given explicitly
  FiberParams fiber;
  PumpSpec pump;
  std::vector<double> rates;
  std::vector<double> powers;  // W; exclusive with rates
  GridSpec grid;
  SsfSpec ssf;
  JsaOptions jsa{true, 0.0, 0};
  bool jsa_cw_shift = false;
  std::optional<FilterConfig> filter;
  OptimizeSpec optimize;
  std::string output_dir = "out";
  std::size_t parallelism = 1;

  /// Configuration error on any inconsistency.
  void validate() const;
};

/// INI text with sections [run] [fiber] [pump] [rates] [grid] [ssf] [jsa]
/// [filter] [optimize]; a [meta] section is accepted and ignored. Unknown
/// sections or keys are errors.
RunConfig parse_config(std::istream& in, const std::string& origin = "<config>");
RunConfig load_config(const std::string& path);

/// Round-trips through parse_config exactly (17 significant digits).
void write_config(std::ostream& out, const RunConfig& cfg);

/// Default configuration with a preset applied.
RunConfig preset_config(const std::string& preset);

}  // namespace fwmpair
