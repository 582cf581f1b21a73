#include "fwmpair/analytic_jta.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fwmpair/error.hpp"

namespace fwmpair {

PumpIntensityAccumulator::PumpIntensityAccumulator(const PumpEnvelope& pump) : grid_(pump.grid()) {
  const Eigen::VectorXd power = pump.intensity();
  cumulative_.resize(grid_.n_points);
  cumulative_[0] = 0.0;
  for (std::size_t j = 1; j < grid_.n_points; ++j) {
    const auto m = static_cast<Eigen::Index>(j);
    cumulative_[j] = cumulative_[j - 1] + 0.5 * (power(m - 1) + power(m)) * grid_.dt;
  }
}

double PumpIntensityAccumulator::at(double t) const {
  const double x = (t - grid_.first()) / grid_.dt;
  if (!(x > 0.0)) return 0.0;
  const double last = static_cast<double>(grid_.n_points - 1);
  if (x >= last) return cumulative_.back();
  const auto j = static_cast<std::size_t>(std::floor(x));
  const double frac = x - static_cast<double>(j);
  return cumulative_[j] * (1.0 - frac) + cumulative_[j + 1] * frac;
}

double walkoff_epsilon(const FiberParams& p, double pump_duration) {
  return 1e-3 * std::max({std::abs(p.beta1_s), std::abs(p.beta1_i), pump_duration / p.length});
}

CreationPoint creation_coords(double t_s, double t_i, const FiberParams& p, double epsilon) {
  const double d = p.walkoff_difference();
  if (std::abs(d) <= epsilon) {
    std::ostringstream msg;
    msg << "signal and idler share a group velocity (beta1_s - beta1_i = " << d
        << " s/m); the creation point is undefined";
    fail(ErrorKind::degenerate_walkoff, msg.str());
  }
  return CreationPoint{p.length - (t_s - t_i) / d, (p.beta1_s * t_i - p.beta1_i * t_s) / d};
}

double nonlinear_phase_theta(double t_s, double t_i, const CreationPoint& creation, const PumpEnvelope& pump,
                             const PumpIntensityAccumulator& acc, const FiberParams& p, double epsilon) {
  const double tol = 1e-9 * p.length;
  if (creation.z < -tol || creation.z > p.length + tol) {
    std::ostringstream msg;
    msg << "creation point z = " << creation.z << " m lies outside the fibre [0, " << p.length << "]";
    fail(ErrorKind::domain, msg.str());
  }
  const double z = std::clamp(creation.z, 0.0, p.length);
  const double remaining = p.length - z;
  auto walkoff_term = [&](double gamma, double beta1, double arrival) {
    if (gamma == 0.0) return 0.0;
    if (std::abs(beta1) < epsilon) return 2.0 * gamma * remaining * std::norm(pump.field_at(arrival));
    return 2.0 * gamma / beta1 * acc.integral(creation.t, arrival);
  };
  return 2.0 * p.gamma_p * z * std::norm(pump.field_at(creation.t)) + walkoff_term(p.gamma_s, p.beta1_s, t_s) +
         walkoff_term(p.gamma_i, p.beta1_i, t_i);
}

JointAmplitude build_jta(const PumpEnvelope& pump, const FiberParams& p, const TemporalGrid& signal_grid,
                         const TemporalGrid& idler_grid, const JtaOptions& options) {
  const double epsilon = walkoff_epsilon(p, pump.effective_duration());
  const double d = p.walkoff_difference();
  if (std::abs(d) <= epsilon) {
    creation_coords(0.0, 0.0, p, epsilon);  // throws the degenerate walk-off error
  }
  const PumpIntensityAccumulator acc(pump);
  const cdouble prefactor{0.0, std::sqrt(p.gamma_s * p.gamma_i) / std::abs(d)};
  const double tol = 1e-9 * p.length;

  const auto ns = static_cast<Eigen::Index>(signal_grid.n_points);
  const auto ni = static_cast<Eigen::Index>(idler_grid.n_points);
  Eigen::MatrixXcd matrix = Eigen::MatrixXcd::Zero(ns, ni);
  for (Eigen::Index k = 0; k < ni; ++k) {
    const double t_i = idler_grid.time(static_cast<std::size_t>(k));
    for (Eigen::Index j = 0; j < ns; ++j) {
      const double t_s = signal_grid.time(static_cast<std::size_t>(j));
      const CreationPoint c = creation_coords(t_s, t_i, p, epsilon);
      if (c.z < -tol || c.z > p.length + tol) continue;
      const bool on_edge = c.z <= tol || c.z >= p.length - tol;
      const cdouble field = pump.field_at(c.t);
      cdouble value = prefactor * field * field;
      if (value == cdouble{0.0, 0.0}) continue;
      if (options.include_phase) value *= std::polar(1.0, nonlinear_phase_theta(t_s, t_i, c, pump, acc, p, epsilon));
      matrix(j, k) = on_edge ? 0.5 * value : value;
    }
  }

  // The support must not touch the window: wrap-around in the 2D transform
  // would fold it onto the opposite side.
  const double peak = matrix.cwiseAbs2().maxCoeff();
  const double border = std::max({matrix.row(0).cwiseAbs2().maxCoeff(), matrix.row(ns - 1).cwiseAbs2().maxCoeff(),
                                  matrix.col(0).cwiseAbs2().maxCoeff(), matrix.col(ni - 1).cwiseAbs2().maxCoeff()});
  if (peak > 0.0 && border > coverage_threshold * peak) {
    std::ostringstream msg;
    msg << "JTA support reaches the grid edge (edge/peak intensity " << border / peak << ")";
    fail(ErrorKind::coverage, msg.str());
  }
  return JointAmplitude::time_domain(std::move(matrix), signal_grid, idler_grid);
}

double generation_rate(const JointAmplitude& jta) {
  if (jta.domain() != Domain::time) fail(ErrorKind::domain, "generation rate needs a time-domain amplitude");
  return jta.norm_squared();
}

double generation_rate_closed_form(const PumpEnvelope& pump, const FiberParams& p) {
  return p.gamma_s * p.gamma_i * p.length / std::abs(p.walkoff_difference()) * pump.intensity_squared_integral();
}

double power_for_rate(const PumpEnvelope& pump_shape, const FiberParams& p, const TemporalGrid& signal_grid,
                      const TemporalGrid& idler_grid, double target_rate) {
  if (!(target_rate >= 0.0)) fail(ErrorKind::domain, "target rate must be non-negative");
  if (target_rate == 0.0) return 0.0;
  const PumpEnvelope unit = pump_shape.with_peak_power(1.0);
  const double unit_rate = generation_rate(build_jta(unit, p, signal_grid, idler_grid, JtaOptions{false}));
  if (!(unit_rate > 0.0)) fail(ErrorKind::degenerate_state, "pump produces no pairs on this grid");
  return std::sqrt(target_rate / unit_rate);
}

}  // namespace fwmpair
