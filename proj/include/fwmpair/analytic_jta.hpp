#pragma once

#include <vector>

#include "fwmpair/fiber.hpp"
#include "fwmpair/grid.hpp"
#include "fwmpair/pump.hpp"

namespace fwmpair {

/// Running trapezoid integral of |E(t)|^2 from the first grid sample (W s).
class PumpIntensityAccumulator {
 public:
  explicit PumpIntensityAccumulator(const PumpEnvelope& pump);

  const TemporalGrid& grid() const { return grid_; }
  const std::vector<double>& cumulative() const { return cumulative_; }

  /// Cumulative integral at frame time t, linearly interpolated and clamped
  /// to the grid.
  double at(double t) const;
  /// Integral of |E|^2 from a to b (signed).
  double integral(double a, double b) const { return at(b) - at(a); }

 private:
  TemporalGrid grid_;
  std::vector<double> cumulative_;
};

/// Below this |beta1| a walk-off integral is replaced by its
/// group-velocity-matched limit, and below this |beta1_s - beta1_i| the
/// creation point is undefined.
double walkoff_epsilon(const FiberParams& p, double pump_duration);

struct CreationPoint {
  double z = 0.0;  // m, may fall outside [0, L]
  double t = 0.0;  // s
};

/// Creation position and time implied by the signal/idler arrival times.
CreationPoint creation_coords(double t_s, double t_i, const FiberParams& p, double epsilon);

/// SPM of the pump before creation plus XPM on each photon afterwards.
double nonlinear_phase_theta(double t_s, double t_i, const CreationPoint& creation, const PumpEnvelope& pump,
                             const PumpIntensityAccumulator& acc, const FiberParams& p, double epsilon);

struct JtaOptions {
  /// Drop the nonlinear phase (|JTA| is unaffected).
  bool include_phase = true;
};

/// First-order JTA with hard support 0 < z_c < L and the global phase fixed
/// to +i sqrt(gamma_s gamma_i) / |beta1_s - beta1_i|. Samples falling exactly
/// on z_c = 0 or z_c = L take half the interior value, the midpoint of the
/// jump.
JointAmplitude build_jta(const PumpEnvelope& pump, const FiberParams& p, const TemporalGrid& signal_grid,
                         const TemporalGrid& idler_grid, const JtaOptions& options = {});

/// sum |JTA|^2 dt_s dt_i; pairs per pulse.
double generation_rate(const JointAmplitude& jta);

/// Closed form (gamma_s gamma_i L / |beta1_s - beta1_i|) int |E|^4 dt.
double generation_rate_closed_form(const PumpEnvelope& pump, const FiberParams& p);

/// Peak power at which the numerically integrated rate equals target_rate.
/// Exact inversion: the rate is quadratic in peak power.
double power_for_rate(const PumpEnvelope& pump_shape, const FiberParams& p, const TemporalGrid& signal_grid,
                      const TemporalGrid& idler_grid, double target_rate);

}  // namespace fwmpair
