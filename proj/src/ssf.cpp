#include "fwmpair/ssf.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fwmpair/error.hpp"
#include "fwmpair/schmidt.hpp"

namespace fwmpair {

namespace {

double max_walkoff(const FiberParams& p) { return std::max(std::abs(p.beta1_s), std::abs(p.beta1_i)); }

// exp(i (beta1 w + beta2/2 w^2) length) over a spectral axis.
Eigen::VectorXcd dispersion_phase(const SpectralGrid& grid, double beta1, double beta2, double length) {
  Eigen::VectorXcd phase(static_cast<Eigen::Index>(grid.n_points));
  for (std::size_t k = 0; k < grid.n_points; ++k) {
    const double w = grid.detuning(k);
    phase(static_cast<Eigen::Index>(k)) = std::polar(1.0, (beta1 * w + 0.5 * beta2 * w * w) * length);
  }
  return phase;
}

Eigen::VectorXcd pump_dispersion(const Eigen::VectorXcd& field, const TemporalGrid& grid,
                                 const Eigen::VectorXcd& phase) {
  Eigen::VectorXcd spectrum = transform_1d(field, grid, Direction::time_to_frequency);
  spectrum.array() *= phase.array();
  return transform_1d(std::span<const cdouble>(spectrum.data(), static_cast<std::size_t>(spectrum.size())),
                      grid.n_points, Direction::frequency_to_time);
}

void transform_both(Eigen::MatrixXcd& m, Direction direction) {
  transform_axis(m, 0, direction);
  transform_axis(m, 1, direction);
}

void apply_xpm(Eigen::MatrixXcd& m, const Eigen::VectorXd& power, const FiberParams& p, double dz) {
  const Eigen::Index n = m.rows();
  Eigen::VectorXcd rows(n);
  Eigen::VectorXcd cols(m.cols());
  for (Eigen::Index j = 0; j < n; ++j) rows(j) = std::polar(1.0, 2.0 * p.gamma_s * power(j) * dz);
  for (Eigen::Index k = 0; k < m.cols(); ++k) cols(k) = std::polar(1.0, 2.0 * p.gamma_i * power(k) * dz);
  for (Eigen::Index k = 0; k < m.cols(); ++k) m.col(k).array() *= rows.array() * cols(k);
}

void apply_injection(Eigen::MatrixXcd& m, const Eigen::VectorXcd& field, const FiberParams& p, double dz, double dt) {
  const cdouble coupling{0.0, std::sqrt(p.gamma_s * p.gamma_i) * dz / dt};
  for (Eigen::Index j = 0; j < m.rows(); ++j) m(j, j) += coupling * field(j) * field(j);
}

const TemporalGrid& pair_time_grid(const JointAmplitude& jta, const PumpEnvelope& pump) {
  jta.validate();
  if (jta.domain() != Domain::time) fail(ErrorKind::domain, "this step acts on a time-domain amplitude");
  const auto& s = std::get<TemporalGrid>(jta.signal_axis);
  const auto& i = std::get<TemporalGrid>(jta.idler_axis);
  if (!(s == pump.grid()) || !(i == pump.grid())) {
    fail(ErrorKind::dimension, "pump grid does not match the joint amplitude axes");
  }
  return s;
}

double fit_order(const std::vector<ConvergenceRow>& rows) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t r = 0; r + 1 < rows.size(); ++r) {
    if (rows[r].deviation > 0.0) pts.emplace_back(std::log(rows[r].dz), std::log(rows[r].deviation));
  }
  if (pts.size() < 2) return 0.0;
  double mx = 0.0, my = 0.0;
  for (auto [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxy = 0.0, sxx = 0.0;
  for (auto [x, y] : pts) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  return sxy / sxx;
}

std::vector<std::size_t> sorted_steps(std::vector<std::size_t> steps) {
  if (steps.size() < 3) fail(ErrorKind::configuration, "a convergence study needs at least three step counts");
  std::sort(steps.begin(), steps.end());
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
  if (steps.size() < 3) fail(ErrorKind::configuration, "a convergence study needs three distinct step counts");
  return steps;
}

}  // namespace

void SsfConfig::validate(const FiberParams& p) const {
  if (n_steps == 0) fail(ErrorKind::configuration, "ssf needs at least one step");
  const double shift = max_walkoff(p) * dz(p);
  if (!(shift < grid.dt)) {
    std::ostringstream msg;
    msg << "ssf step too long: photons move " << shift << " s per step on a grid of " << grid.dt
        << " s (increase steps to at least " << static_cast<std::size_t>(std::ceil(max_walkoff(p) * p.length / grid.dt))
        << ")";
    fail(ErrorKind::configuration, msg.str());
  }
}

SsfConfig SsfConfig::for_grid(const TemporalGrid& grid, const FiberParams& p, double margin) {
  const double needed = std::ceil(margin * max_walkoff(p) * p.length / grid.dt);
  std::size_t steps = std::max<std::size_t>(1, static_cast<std::size_t>(needed));
  SsfConfig cfg{steps, grid};
  while (max_walkoff(p) * cfg.dz(p) >= grid.dt) ++cfg.n_steps;
  return cfg;
}

PumpEvolution propagate_pump(const PumpEnvelope& pump, const FiberParams& p, const SsfConfig& cfg,
                             const SsfOptions& options) {
  cfg.validate(p);
  if (!(pump.grid() == cfg.grid)) fail(ErrorKind::dimension, "pump grid differs from the ssf grid");
  const double dz = cfg.dz(p);
  const double gamma = options.pump_spm ? p.gamma_p : 0.0;
  const bool disperse = p.beta2_p != 0.0;
  const Eigen::VectorXcd half = dispersion_phase(dual_grid(cfg.grid), 0.0, p.beta2_p, 0.5 * dz);

  std::vector<PumpEnvelope> midpoints;
  midpoints.reserve(cfg.n_steps);
  Eigen::VectorXcd field = pump.samples();
  for (std::size_t q = 0; q < cfg.n_steps; ++q) {
    if (disperse) field = pump_dispersion(field, cfg.grid, half);
    if (gamma != 0.0) {
      for (Eigen::Index j = 0; j < field.size(); ++j) field(j) *= std::polar(1.0, 0.5 * gamma * std::norm(field(j)) * dz);
    }
    midpoints.push_back(PumpEnvelope::from_samples(cfg.grid, field));
    if (gamma != 0.0) {
      for (Eigen::Index j = 0; j < field.size(); ++j) field(j) *= std::polar(1.0, 0.5 * gamma * std::norm(field(j)) * dz);
    }
    if (disperse) field = pump_dispersion(field, cfg.grid, half);
  }
  return PumpEvolution{std::move(midpoints), PumpEnvelope::from_samples(cfg.grid, std::move(field))};
}

JointAmplitude pair_dispersion_half_step(const JointAmplitude& jsa, const FiberParams& p, double dz) {
  jsa.validate();
  if (jsa.domain() != Domain::frequency) fail(ErrorKind::domain, "dispersion acts on a frequency-domain amplitude");
  const auto& s = std::get<SpectralGrid>(jsa.signal_axis);
  const auto& i = std::get<SpectralGrid>(jsa.idler_axis);
  const Eigen::VectorXcd ps = dispersion_phase(s, p.beta1_s, p.beta2_s, 0.5 * dz);
  const Eigen::VectorXcd pi = dispersion_phase(i, p.beta1_i, p.beta2_i, 0.5 * dz);
  JointAmplitude out = jsa;
  for (Eigen::Index k = 0; k < out.matrix.cols(); ++k) out.matrix.col(k).array() *= ps.array() * pi(k);
  return out;
}

JointAmplitude pair_xpm_step(const JointAmplitude& jta, const PumpEnvelope& pump_at_z, const FiberParams& p,
                             double dz) {
  pair_time_grid(jta, pump_at_z);
  JointAmplitude out = jta;
  apply_xpm(out.matrix, pump_at_z.intensity(), p, dz);
  return out;
}

JointAmplitude fwm_inject_step(const JointAmplitude& jta, const PumpEnvelope& pump_at_z, const FiberParams& p,
                               double dz) {
  const TemporalGrid& grid = pair_time_grid(jta, pump_at_z);
  JointAmplitude out = jta;
  apply_injection(out.matrix, pump_at_z.samples(), p, dz, grid.dt);
  return out;
}

JointAmplitude simulate_pair_state(const PumpEnvelope& pump, const FiberParams& p, const SsfConfig& cfg,
                                   const SsfOptions& options) {
  const PumpEvolution evolution = propagate_pump(pump, p, cfg, options);
  const double dz = cfg.dz(p);
  const SpectralGrid spectral = dual_grid(cfg.grid);
  const Eigen::VectorXcd ps = dispersion_phase(spectral, p.beta1_s, p.beta2_s, 0.5 * dz);
  const Eigen::VectorXcd pi = dispersion_phase(spectral, p.beta1_i, p.beta2_i, 0.5 * dz);
  const Eigen::MatrixXcd half = ps * pi.transpose();

  // The loop works on unitary DFT samples; the density scaling dt/dw is a
  // constant that commutes with every step and is applied once at the end.
  const auto n = static_cast<Eigen::Index>(cfg.grid.n_points);
  Eigen::MatrixXcd state = Eigen::MatrixXcd::Zero(n, n);
  const bool xpm = options.pair_xpm && (p.gamma_s != 0.0 || p.gamma_i != 0.0);
  for (std::size_t q = 0; q < cfg.n_steps; ++q) {
    const PumpEnvelope& mid = evolution.midpoints[q];
    state.array() *= half.array();
    transform_both(state, Direction::frequency_to_time);
    if (xpm) apply_xpm(state, mid.intensity(), p, dz);
    if (options.inject) apply_injection(state, mid.samples(), p, dz, cfg.grid.dt);
    transform_both(state, Direction::time_to_frequency);
    state.array() *= half.array();
  }
  state *= cfg.grid.dt / spectral.d_omega;
  return JointAmplitude::frequency_domain(std::move(state), spectral, spectral);
}

ConvergenceTable pump_convergence(const PumpEnvelope& pump, const FiberParams& p, const std::vector<std::size_t>& steps,
                                  const SsfOptions& options) {
  ConvergenceTable table;
  std::vector<Eigen::VectorXcd> outputs;
  for (std::size_t n : sorted_steps(steps)) {
    const SsfConfig cfg{n, pump.grid()};
    outputs.push_back(propagate_pump(pump, p, cfg, options).output.samples());
    table.rows.push_back({n, cfg.dz(p), 0.0});
  }
  const Eigen::VectorXcd& ref = outputs.back();
  for (std::size_t r = 0; r < outputs.size(); ++r) table.rows[r].deviation = (outputs[r] - ref).norm() / ref.norm();
  table.fitted_order = fit_order(table.rows);
  return table;
}

ConvergenceTable pair_convergence(const PumpEnvelope& pump, const FiberParams& p, const std::vector<std::size_t>& steps,
                                  const SsfOptions& options) {
  ConvergenceTable table;
  std::vector<JointAmplitude> outputs;
  for (std::size_t n : sorted_steps(steps)) {
    const SsfConfig cfg{n, pump.grid()};
    outputs.push_back(simulate_pair_state(pump, p, cfg, options));
    table.rows.push_back({n, cfg.dz(p), 0.0});
  }
  for (std::size_t r = 0; r < outputs.size(); ++r) {
    table.rows[r].deviation = normalized_distance(outputs[r], outputs.back());
  }
  table.fitted_order = fit_order(table.rows);
  return table;
}

}  // namespace fwmpair
