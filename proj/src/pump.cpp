#include "fwmpair/pump.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fwmpair/error.hpp"

namespace fwmpair {

namespace {

constexpr double speed_of_light = 299792458.0;

}  // namespace

PumpEnvelope PumpEnvelope::from_samples(const TemporalGrid& grid, Eigen::VectorXcd samples) {
  if (static_cast<std::size_t>(samples.size()) != grid.n_points) {
    fail(ErrorKind::dimension, "pump has " + std::to_string(samples.size()) + " samples on a grid of " +
                                   std::to_string(grid.n_points));
  }
  const Eigen::VectorXd power = samples.cwiseAbs2();
  const double peak = power.maxCoeff();
  const double energy = power.sum() * grid.dt;
  if (!std::isfinite(energy) || !(energy > 0.0)) fail(ErrorKind::domain, "pump energy must be finite and positive");
  const double edge = std::max(power(0), power(power.size() - 1));
  if (edge >= coverage_threshold * peak) {
    std::ostringstream msg;
    msg << "pump reaches the grid edge: edge/peak power = " << edge / peak << " over a span of " << grid.span()
        << " s";
    fail(ErrorKind::coverage, msg.str());
  }
  return PumpEnvelope(grid, std::move(samples), peak);
}

double PumpEnvelope::energy() const { return samples_.squaredNorm() * grid_.dt; }

double PumpEnvelope::intensity_squared_integral() const { return intensity().array().square().sum() * grid_.dt; }

double PumpEnvelope::effective_duration() const {
  return energy() / (peak_power_ * std::sqrt(std::numbers::pi));
}

PumpEnvelope PumpEnvelope::with_peak_power(double peak_power) const {
  if (!(peak_power >= 0.0)) fail(ErrorKind::domain, "peak power must be non-negative");
  PumpEnvelope out = *this;
  const double scale = std::sqrt(peak_power / peak_power_);
  out.samples_ *= scale;
  out.peak_power_ = peak_power;
  return out;
}

cdouble PumpEnvelope::field_at(double t) const {
  const double x = (t - grid_.first()) / grid_.dt;
  if (!(x >= 0.0) || x > static_cast<double>(grid_.n_points - 1)) return {0.0, 0.0};
  const auto j = static_cast<Eigen::Index>(std::floor(x));
  if (j >= samples_.size() - 1) return samples_(samples_.size() - 1);
  const double frac = x - static_cast<double>(j);
  return samples_(j) * (1.0 - frac) + samples_(j + 1) * frac;
}

PumpEnvelope gaussian_pump(const TemporalGrid& grid, double tau, double peak_power) {
  if (!(tau >= 4.0 * grid.dt)) {
    fail(ErrorKind::resolution, "pump duration " + std::to_string(tau) + " s is under-resolved by step " +
                                    std::to_string(grid.dt) + " s (need tau >= 4 dt)");
  }
  if (!(peak_power > 0.0)) fail(ErrorKind::domain, "peak power must be positive");
  Eigen::VectorXcd samples(static_cast<Eigen::Index>(grid.n_points));
  const double amplitude = std::sqrt(peak_power);
  for (std::size_t j = 0; j < grid.n_points; ++j) {
    const double t = grid.time(j);
    samples(static_cast<Eigen::Index>(j)) = amplitude * std::exp(-t * t / (2.0 * tau * tau));
  }
  return PumpEnvelope::from_samples(grid, std::move(samples));
}

PumpEnvelope square_pump(const TemporalGrid& grid, double duration, double peak_power, double edge_smoothing) {
  if (!(duration >= 8.0 * grid.dt)) fail(ErrorKind::resolution, "square pump shorter than 8 grid steps");
  if (!(edge_smoothing >= 0.0) || edge_smoothing > duration) {
    fail(ErrorKind::domain, "edge smoothing must lie in [0, duration]");
  }
  if (!(peak_power > 0.0)) fail(ErrorKind::domain, "peak power must be positive");
  if (duration + edge_smoothing >= grid.span()) fail(ErrorKind::coverage, "square pump longer than the grid span");
  const double amplitude = std::sqrt(peak_power);
  const double half = 0.5 * duration;
  Eigen::VectorXcd samples(static_cast<Eigen::Index>(grid.n_points));
  for (std::size_t j = 0; j < grid.n_points; ++j) {
    const double u = std::abs(grid.time(j));
    double value = 0.0;
    if (edge_smoothing == 0.0) {
      value = u < half ? 1.0 : 0.0;
    } else if (u <= half - 0.5 * edge_smoothing) {
      value = 1.0;
    } else if (u < half + 0.5 * edge_smoothing) {
      const double s = (u - (half - 0.5 * edge_smoothing)) / edge_smoothing;
      value = 0.5 * (1.0 + std::cos(std::numbers::pi * s));
    }
    samples(static_cast<Eigen::Index>(j)) = amplitude * value;
  }
  return PumpEnvelope::from_samples(grid, std::move(samples));
}

double bandwidth_to_tau(double delta_lambda_fwhm, double lambda0) {
  if (!(delta_lambda_fwhm > 0.0) || !(lambda0 > 0.0)) fail(ErrorKind::domain, "bandwidth and wavelength must be positive");
  const double delta_nu = speed_of_light * delta_lambda_fwhm / (lambda0 * lambda0);
  const double fwhm_duration = 2.0 * std::numbers::ln2 / (std::numbers::pi * delta_nu);
  return fwhm_duration / (2.0 * std::sqrt(std::numbers::ln2));
}

PumpEnvelope prechirp(const PumpEnvelope& pump, double beta2, double length) {
  if (length == 0.0 || beta2 == 0.0) return pump;
  const TemporalGrid& grid = pump.grid();
  const SpectralGrid spectral = dual_grid(grid);
  Eigen::VectorXcd spectrum = transform_1d(pump.samples(), grid, Direction::time_to_frequency);
  for (std::size_t k = 0; k < spectral.n_points; ++k) {
    const double w = spectral.detuning(k);
    spectrum(static_cast<Eigen::Index>(k)) *= std::polar(1.0, 0.5 * beta2 * w * w * length);
  }
  const std::span<const cdouble> view(spectrum.data(), static_cast<std::size_t>(spectrum.size()));
  return PumpEnvelope::from_samples(grid, transform_1d(view, grid.n_points, Direction::frequency_to_time));
}

}  // namespace fwmpair
