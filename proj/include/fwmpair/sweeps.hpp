#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fwmpair/config.hpp"
#include "fwmpair/filtering.hpp"
#include "fwmpair/pump.hpp"
#include "fwmpair/ssf.hpp"

namespace fwmpair {

/// A config with every automatic choice made, plus the grids and unit-power
/// pumps it implies.
struct ResolvedRun {
  RunConfig config;  // auto fields filled in
  FiberParams fiber;  // as simulated (beta2 zeroed when disabled)
  double duration = 0.0;  // tau for gaussian pumps, full width for square
  TemporalGrid signal_time;
  TemporalGrid idler_time;
  SpectralGrid signal_freq;
  SpectralGrid idler_freq;
  SsfConfig ssf;
  /// Unit peak power. The time pump lives on the JTA/SSF grid, the spectral
  /// pump on the finer grid used for the analytic JSA.
  std::optional<PumpEnvelope> pump_time;
  std::optional<PumpEnvelope> pump_spectral;
};

ResolvedRun resolve(const RunConfig& cfg);

/// Copy of cfg with the pump's duration parameter replaced (tau or width).
RunConfig with_duration(const RunConfig& cfg, double duration);
/// tau, or the square width, after bandwidth conversion.
double pump_duration(const RunConfig& cfg);

struct StatePoint {
  double target_rate = 0.0;
  double rate = 0.0;
  double peak_power = 0.0;
  JointAmplitude amplitude;
};

/// Rate 0 is the first-order limit: nonlinear phases off, shape only.
StatePoint state_for_rate(const ResolvedRun& run, double rate);
StatePoint state_for_power(const ResolvedRun& run, double peak_power);

/// Frequency-domain version of a state (JTA transformed when needed).
JointAmplitude spectral_state(const StatePoint& point);

struct RateRow {
  double target_rate = 0.0;
  double rate = 0.0;
  double peak_power = 0.0;
  double purity = 0.0;
  double schmidt_number = 0.0;
  double visibility_low = 0.0;
  std::string error;  // empty on success
};

/// Rows in input order; a failing row records its diagnostic and the run
/// continues.
std::vector<RateRow> purity_vs_rate(const ResolvedRun& run);
std::vector<RateRow> purity_vs_rate(const RunConfig& cfg);

struct TauSample {
  double duration = 0.0;
  double purity = 0.0;
};

struct TauOptimum {
  double duration = 0.0;
  double purity = 0.0;
  bool at_boundary = false;
  std::vector<TauSample> trace;
};

/// Golden-section search in log duration for the purest state at a fixed
/// rate.
TauOptimum optimize_tau(const RunConfig& cfg, double rate);

/// (P, P - R): the coarse window for two-source interference visibility
/// when multi-pair emission of order R^2 can cost at most R.
std::pair<double, double> visibility_bound(double purity, double rate);

/// One curve per configured rate over the configured (or default) widths.
std::vector<FilterCurve> filter_sweep(const ResolvedRun& run);

}  // namespace fwmpair
