#pragma once

#include "fwmpair/grid.hpp"

namespace fwmpair {

/// Edge intensity allowed relative to the peak before an envelope is
/// considered to wrap around the periodic grid.
inline constexpr double coverage_threshold = 1e-6;

/// Classical pump field in sqrt(W): |samples|^2 is instantaneous power.
class PumpEnvelope {
 public:
  /// Validates length, finite non-zero energy and edge coverage.
  static PumpEnvelope from_samples(const TemporalGrid& grid, Eigen::VectorXcd samples);

  const TemporalGrid& grid() const { return grid_; }
  const Eigen::VectorXcd& samples() const { return samples_; }
  double peak_power() const { return peak_power_; }

  Eigen::VectorXd intensity() const { return samples_.cwiseAbs2(); }
  /// Pulse energy, sum |E|^2 dt.
  double energy() const;
  /// sum |E|^4 dt; the integral that fixes the pair rate.
  double intensity_squared_integral() const;
  /// Duration such that a Gaussian exp(-t^2/2tau^2) returns tau.
  double effective_duration() const;

  /// Same shape rescaled to the given peak power.
  PumpEnvelope with_peak_power(double peak_power) const;

  /// Linear interpolation of the complex field at frame time t; zero outside
  /// the grid.
  cdouble field_at(double t) const;

 private:
  PumpEnvelope(TemporalGrid grid, Eigen::VectorXcd samples, double peak_power)
      : grid_(grid), samples_(std::move(samples)), peak_power_(peak_power) {}

  TemporalGrid grid_;
  Eigen::VectorXcd samples_;
  double peak_power_ = 0.0;
};

/// sqrt(P) exp(-t^2 / 2 tau^2), peak at t = 0.
PumpEnvelope gaussian_pump(const TemporalGrid& grid, double tau, double peak_power);

/// Flat top of full width `duration` centred on t = 0. A non-zero
/// `edge_smoothing` replaces each hard edge by a raised-cosine ramp of that
/// width centred on the nominal edge, keeping the half-maximum width.
PumpEnvelope square_pump(const TemporalGrid& grid, double duration, double peak_power, double edge_smoothing = 0.0);

/// tau of the transform-limited Gaussian amplitude exp(-t^2/2tau^2) whose
/// intensity FWHM bandwidth is `delta_lambda_fwhm` at `lambda0`.
double bandwidth_to_tau(double delta_lambda_fwhm, double lambda0);

/// Linear dispersion over `length` (may be negative): the spectrum is
/// multiplied by exp(i beta2/2 dw^2 length).
PumpEnvelope prechirp(const PumpEnvelope& pump, double beta2, double length);

}  // namespace fwmpair
