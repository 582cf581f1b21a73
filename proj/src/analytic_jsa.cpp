#include "fwmpair/analytic_jsa.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "fwmpair/error.hpp"

namespace fwmpair {

namespace {

double sinc(double x) { return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }

// F sampled on every sum the two axes can form. When both axes share a step
// the sums sit on a lattice of n_s + n_i - 1 values.
class SumTable {
 public:
  SumTable(const PumpFunction& f, const SpectralGrid& s, const SpectralGrid& i) : f_(f), s_(s), i_(i) {
    lattice_ = s.d_omega == i.d_omega;
    if (lattice_) {
      values_.resize(s.n_points + i.n_points - 1);
      for (std::size_t m = 0; m < values_.size(); ++m) {
        values_[m] = f(s.detuning(0) + i.detuning(0) + static_cast<double>(m) * s.d_omega);
      }
    }
  }

  cdouble at(std::size_t j, std::size_t k) const {
    if (lattice_) return values_[j + k];
    return f_(s_.detuning(j) + i_.detuning(k));
  }

 private:
  const PumpFunction& f_;
  SpectralGrid s_;
  SpectralGrid i_;
  bool lattice_ = false;
  std::vector<cdouble> values_;
};

}  // namespace

PumpFunction::PumpFunction(const Eigen::VectorXcd& spectrum_density, const SpectralGrid& grid) {
  if (static_cast<std::size_t>(spectrum_density.size()) != grid.n_points) {
    fail(ErrorKind::dimension, "pump spectrum length does not match its grid");
  }
  const Eigen::VectorXcd field = temporal_samples(spectrum_density, grid);
  squared_field_ = field.array().square();
  dt_ = grid.conjugate_dt;
  times_.resize(field.size());
  const auto half = static_cast<double>(grid.n_points / 2);
  for (Eigen::Index j = 0; j < field.size(); ++j) times_(j) = (static_cast<double>(j) - half) * dt_;
  min_sum_ = 2.0 * grid.detuning(0);
  max_sum_ = 2.0 * grid.detuning(grid.n_points - 1);
}

PumpFunction::PumpFunction(const PumpEnvelope& pump)
    : PumpFunction(spectral_density(pump.samples(), pump.grid()), dual_grid(pump.grid())) {}

cdouble PumpFunction::operator()(double sum_detuning) const {
  if (sum_detuning < min_sum_ || sum_detuning > max_sum_) {
    std::ostringstream msg;
    msg << "sum detuning " << sum_detuning << " rad/s outside the pump's covered range [" << min_sum_ << ", "
        << max_sum_ << "]";
    fail(ErrorKind::range, msg.str());
  }
  // exp(i S t_j) by recurrence from the first sample.
  cdouble phase = std::polar(1.0, sum_detuning * times_(0));
  const cdouble step = std::polar(1.0, sum_detuning * dt_);
  cdouble acc{0.0, 0.0};
  for (Eigen::Index j = 0; j < squared_field_.size(); ++j) {
    acc += squared_field_(j) * phase;
    phase *= step;
  }
  return acc * dt_;
}

cdouble pump_function_F(const Eigen::VectorXcd& spectrum_density, const SpectralGrid& grid, double sum_detuning) {
  return PumpFunction(spectrum_density, grid)(sum_detuning);
}

double phase_mismatch(double d_omega_s, double d_omega_i, const FiberParams& p, bool include_beta2,
                      double cw_power) {
  double delta = -d_omega_s * p.beta1_s - d_omega_i * p.beta1_i - 2.0 * p.gamma_p * cw_power;
  if (include_beta2) {
    const double d_omega_p = 0.5 * (d_omega_s + d_omega_i);
    delta += p.beta2_p * d_omega_p * d_omega_p - 0.5 * p.beta2_s * d_omega_s * d_omega_s -
             0.5 * p.beta2_i * d_omega_i * d_omega_i;
  }
  return delta;
}

cdouble phasematch_G(double delta_beta, double length) {
  const double x = 0.5 * delta_beta * length;
  return std::polar(sinc(x), x);
}

JointAmplitude build_jsa_analytic(const PumpEnvelope& pump, const FiberParams& p, const SpectralGrid& signal_grid,
                                  const SpectralGrid& idler_grid, const JsaOptions& options) {
  const auto ns = static_cast<Eigen::Index>(signal_grid.n_points);
  const auto ni = static_cast<Eigen::Index>(idler_grid.n_points);
  Eigen::MatrixXcd matrix(ns, ni);

  if (options.pump_slices == 0) {
    const PumpFunction f(pump);
    const SumTable table(f, signal_grid, idler_grid);
    for (Eigen::Index k = 0; k < ni; ++k) {
      const double wi = idler_grid.detuning(static_cast<std::size_t>(k));
      for (Eigen::Index j = 0; j < ns; ++j) {
        const double ws = signal_grid.detuning(static_cast<std::size_t>(j));
        const double delta = phase_mismatch(ws, wi, p, options.include_beta2, options.cw_power);
        matrix(j, k) = table.at(static_cast<std::size_t>(j), static_cast<std::size_t>(k)) * phasematch_G(delta, p.length);
      }
    }
    return JointAmplitude::frequency_domain(std::move(matrix), signal_grid, idler_grid);
  }

  // Slice-resolved pump: within a slice the pump's shape is frozen while the
  // fast phase exp(i delta_beta z) is integrated exactly. The degenerate part
  // of the pump's own dispersion, exp(i beta2_p S^2 z / 4), already lives in
  // delta_beta, so it is divided out of each slice's F.
  matrix.setZero();
  const std::size_t slices = options.pump_slices;
  const double dz = p.length / static_cast<double>(slices);
  const double beta2_p = options.include_beta2 ? p.beta2_p : 0.0;
  for (std::size_t q = 0; q < slices; ++q) {
    const double z = (static_cast<double>(q) + 0.5) * dz;
    const PumpEnvelope local = prechirp(pump, beta2_p, z);
    const PumpFunction f(local);
    const SumTable table(f, signal_grid, idler_grid);
    for (Eigen::Index k = 0; k < ni; ++k) {
      const double wi = idler_grid.detuning(static_cast<std::size_t>(k));
      for (Eigen::Index j = 0; j < ns; ++j) {
        const double ws = signal_grid.detuning(static_cast<std::size_t>(j));
        const double sum = ws + wi;
        const double delta = phase_mismatch(ws, wi, p, options.include_beta2, options.cw_power);
        const cdouble slice_integral = std::polar(sinc(0.5 * delta * dz) * dz / p.length, delta * z);
        const cdouble degenerate = std::polar(1.0, -0.25 * beta2_p * sum * sum * z);
        matrix(j, k) += table.at(static_cast<std::size_t>(j), static_cast<std::size_t>(k)) * degenerate * slice_integral;
      }
    }
  }
  return JointAmplitude::frequency_domain(std::move(matrix), signal_grid, idler_grid);
}

}  // namespace fwmpair
