#pragma once

#include <cstddef>

#include "fwmpair/fiber.hpp"
#include "fwmpair/grid.hpp"
#include "fwmpair/pump.hpp"

namespace fwmpair {

/// Energy-matching function: the self-convolution of the pump spectral
/// density, evaluated at a total detuning dw_s + dw_i.
///
/// The convolution is evaluated as sum_j E(t_j)^2 exp(i S t_j) dt on the
/// conjugate time grid, which is the band-limited continuation of the
/// discrete self-convolution and needs no spectral interpolation.
class PumpFunction {
 public:
  PumpFunction(const Eigen::VectorXcd& spectrum_density, const SpectralGrid& grid);
  explicit PumpFunction(const PumpEnvelope& pump);

  /// Throws a range error outside twice the spectral window.
  cdouble operator()(double sum_detuning) const;

  double min_sum() const { return min_sum_; }
  double max_sum() const { return max_sum_; }

 private:
  Eigen::VectorXcd squared_field_;
  Eigen::VectorXd times_;
  double dt_ = 0.0;
  double min_sum_ = 0.0;
  double max_sum_ = 0.0;
};

cdouble pump_function_F(const Eigen::VectorXcd& spectrum_density, const SpectralGrid& grid, double sum_detuning);

/// Phase mismatch about the phase-matched carriers (1/m): linear walk-off
/// terms, optional second-order terms, and the CW nonlinear shift -2 gamma_p P.
double phase_mismatch(double d_omega_s, double d_omega_i, const FiberParams& p, bool include_beta2,
                      double cw_power = 0.0);

/// exp(i x) sin(x)/x with x = delta_beta L / 2.
cdouble phasematch_G(double delta_beta, double length);

struct JsaOptions {
  bool include_beta2 = false;
  double cw_power = 0.0;
  /// 0: F from the input pump (plain F x G). N >= 1: the pump is evolved
  /// linearly along the fibre and F is taken per slice, each slice's
  /// phase-matching integral done exactly. N = 1 evaluates the pump at the
  /// fibre midpoint.
  std::size_t pump_slices = 0;
};

/// JSA(w_s, w_i) = F(w_s + w_i) G(delta_beta(w_s, w_i)), not normalized.
JointAmplitude build_jsa_analytic(const PumpEnvelope& pump, const FiberParams& p, const SpectralGrid& signal_grid,
                                  const SpectralGrid& idler_grid, const JsaOptions& options = {});

}  // namespace fwmpair
