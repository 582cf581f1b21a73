#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fwmpair/analytic_jta.hpp"
#include "fwmpair/error.hpp"
#include "fwmpair/schmidt.hpp"
#include "fwmpair/ssf.hpp"
#include "support.hpp"

using namespace fwmpair;

namespace {

// Pump-only fibre: no walk-off, so any step count is admissible.
FiberParams pump_fibre(double beta2, double gamma) {
  FiberParams p;
  p.length = 0.5;
  p.beta2_p = beta2;
  p.gamma_p = gamma;
  return p;
}

struct PairSetup {
  FiberParams p;
  SsfConfig cfg;
  PumpEnvelope pump;
};

PairSetup pair_setup(bool dispersion, std::size_t n = 256) {
  FiberParams p = testing::fiber_a();
  if (!dispersion) p.beta2_p = p.beta2_s = p.beta2_i = 0.0;
  const double walk = p.beta1_s * p.length;
  const double tau = walk / 10;
  const double dt = (walk + 12 * tau) / static_cast<double>(n);
  const TemporalGrid grid = TemporalGrid::make(n, dt, 0.5 * walk);
  return PairSetup{p, SsfConfig::for_grid(grid, p), gaussian_pump(grid, tau, 1.0)};
}

Eigen::MatrixXcd blob(Eigen::Index n, double cs, double ci) {
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const double a = (j - cs) / 4.0, b = (k - ci) / 5.0;
      m(j, k) = std::polar(std::exp(-0.5 * (a * a + b * b)), 0.2 * a * b);
    }
  }
  return m;
}

}  // namespace

TEST_CASE("pump propagation limits") {
  const TemporalGrid grid = TemporalGrid::make(1024, 1e-14);
  const PumpEnvelope pump = gaussian_pump(grid, 1e-13, 100.0);

  SUBCASE("free propagation is the identity") {
    const PumpEnvelope out = propagate_pump(pump, pump_fibre(0.0, 0.0), SsfConfig{17, grid}).output;
    CHECK((out.samples() - pump.samples()).norm() == 0.0);
  }
  SUBCASE("SPM alone is an exact phase") {
    const FiberParams p = pump_fibre(0.0, 0.01);
    const PumpEnvelope out = propagate_pump(pump, p, SsfConfig{13, grid}).output;
    double worst = 0.0;
    for (Eigen::Index j = 0; j < pump.samples().size(); ++j) {
      const cdouble e = pump.samples()(j);
      worst = std::max(worst, std::abs(out.samples()(j) - e * std::polar(1.0, p.gamma_p * std::norm(e) * p.length)));
    }
    CHECK(worst < 1e-10 * std::sqrt(100.0));
  }
  SUBCASE("dispersion broadens a gaussian") {
    const FiberParams p = pump_fibre(2.1e-26, 0.0);
    const PumpEnvelope out = propagate_pump(pump, p, SsfConfig{7, grid}).output;
    const double xi = p.beta2_p * p.length / (1e-13 * 1e-13);
    CHECK(out.intensity().maxCoeff() == doctest::Approx(100.0 / std::sqrt(std::pow(1 + xi * xi, 1.0))).epsilon(5e-3));
    CHECK(out.energy() == doctest::Approx(pump.energy()).epsilon(1e-12));
    CHECK((out.samples() - prechirp(pump, p.beta2_p, p.length).samples()).norm() < 1e-10 * pump.samples().norm());
  }
  SUBCASE("midpoints") {
    const PumpEvolution ev = propagate_pump(pump, pump_fibre(2.1e-26, 0.01), SsfConfig{9, grid});
    CHECK(ev.midpoints.size() == 9);
    for (const auto& m : ev.midpoints) CHECK(m.energy() == doctest::Approx(pump.energy()).epsilon(1e-12));
  }
  CHECK(testing::error_kind([&] {
          propagate_pump(pump, pump_fibre(0, 0), SsfConfig{3, TemporalGrid::make(512, 1e-14)});
        }) == ErrorKind::dimension);
}

TEST_CASE("split-step order") {
  const TemporalGrid grid = TemporalGrid::make(1024, 1e-14);
  const PumpEnvelope pump = gaussian_pump(grid, 1e-13, 1000.0);
  const std::vector<std::size_t> steps{10, 20, 40, 80, 640};
  const ConvergenceTable both = pump_convergence(pump, pump_fibre(2.1e-26, 0.01), steps);
  CHECK(both.fitted_order == doctest::Approx(2.0).epsilon(0.15));
  for (std::size_t r = 1; r + 1 < both.rows.size(); ++r) CHECK(both.rows[r].deviation < both.rows[r - 1].deviation);
  // Either operator alone is integrated exactly: only rounding remains.
  for (const auto& row : pump_convergence(pump, pump_fibre(0.0, 0.01), steps).rows) CHECK(row.deviation < 1e-12);
  for (const auto& row : pump_convergence(pump, pump_fibre(2.1e-26, 0.0), steps).rows) CHECK(row.deviation < 1e-12);
  CHECK(testing::error_kind([&] { pump_convergence(pump, pump_fibre(0, 0), {10, 10, 20}); }) == ErrorKind::configuration);
}

TEST_CASE("pair operators") {
  FiberParams p;
  p.length = 1.0;
  p.beta1_s = 2.0;
  p.gamma_s = 0.3;
  p.gamma_i = 0.2;
  const TemporalGrid grid = TemporalGrid::make(128, 1.0);
  const JointAmplitude jta = JointAmplitude::time_domain(blob(128, 60, 64), grid, grid);

  SUBCASE("dispersion is unitary and delays a slower photon") {
    FiberParams q = p;
    q.beta2_s = 0.7;
    q.beta2_i = -0.4;
    q.beta1_i = -1.0;
    const JointAmplitude f = transform_2d(jta);
    CHECK(pair_dispersion_half_step(f, q, 0.3).norm_squared() == doctest::Approx(f.norm_squared()).epsilon(1e-12));

    // beta1_s dz / 2 = 3 dt: the signal moves three samples later
    const JointAmplitude moved = transform_2d(pair_dispersion_half_step(f, p, 3.0));
    const JointAmplitude expected = JointAmplitude::time_domain(blob(128, 63, 64), grid, grid);
    CHECK((moved.matrix - expected.matrix).norm() < 1e-10 * expected.matrix.norm());
    CHECK(testing::error_kind([&] { pair_dispersion_half_step(jta, p, 1.0); }) == ErrorKind::domain);
  }
  SUBCASE("XPM is a pure phase") {
    const PumpEnvelope pump = gaussian_pump(grid, 10.0, 2.0);
    const JointAmplitude out = pair_xpm_step(jta, pump, p, 0.25);
    for (Eigen::Index j : {40, 60, 70}) {
      for (Eigen::Index k : {50, 64, 80}) {
        const double phase = 2 * 0.25 * (p.gamma_s * pump.intensity()(j) + p.gamma_i * pump.intensity()(k));
        CHECK(std::abs(out.matrix(j, k) - jta.matrix(j, k) * std::polar(1.0, phase)) < 1e-14);
      }
    }
    const JointAmplitude spectral = transform_2d(jta);
    CHECK(testing::error_kind([&] { pair_xpm_step(spectral, pump, p, 0.1); }) == ErrorKind::domain);
    CHECK(testing::error_kind([&] { pair_xpm_step(jta, gaussian_pump(TemporalGrid::make(128, 1.0, 5.0), 10.0, 1.0), p, 0.1); }) ==
          ErrorKind::dimension);
  }
  SUBCASE("injection adds to the diagonal only") {
    const PumpEnvelope pump = gaussian_pump(grid, 10.0, 2.0);
    const JointAmplitude empty = JointAmplitude::time_domain(Eigen::MatrixXcd::Zero(128, 128), grid, grid);
    const double dz = 0.01;
    const JointAmplitude once = fwm_inject_step(empty, pump, p, dz);
    double direct = 0.0;
    for (Eigen::Index j = 0; j < 128; ++j) direct += std::pow(std::norm(pump.samples()(j)), 2);
    direct *= p.gamma_s * p.gamma_i * dz * dz;
    CHECK(once.norm_squared() == doctest::Approx(direct).epsilon(1e-12));
    Eigen::MatrixXcd off = once.matrix;
    off.diagonal().setZero();
    CHECK(off.norm() == 0.0);
    CHECK(std::arg(once.matrix(64, 64)) == doctest::Approx(std::acos(0.0)));
    const JointAmplitude added = fwm_inject_step(jta, pump, p, dz);
    CHECK((added.matrix - jta.matrix - once.matrix).norm() < 1e-14);
  }
}

TEST_CASE("step-length constraint") {
  const PairSetup s = pair_setup(false);
  CHECK_NOTHROW(s.cfg.validate(s.p));
  CHECK(testing::error_kind([&] { SsfConfig{s.cfg.n_steps / 3, s.cfg.grid}.validate(s.p); }) == ErrorKind::configuration);
  CHECK(testing::error_kind([&] { SsfConfig{0, s.cfg.grid}.validate(s.p); }) == ErrorKind::configuration);
  CHECK(s.p.beta1_s * s.cfg.dz(s.p) <= 0.5 * s.cfg.grid.dt + 1e-30);
}

TEST_CASE("pair state") {
  SUBCASE("first-order limit agrees with the walk-off JTA") {
    const PairSetup s = pair_setup(false);
    const PumpEnvelope pump = s.pump.with_peak_power(200.0);
    const JointAmplitude ssf = simulate_pair_state(pump, s.p, s.cfg, SsfOptions{false, false, true});
    const JointAmplitude jta = transform_2d(build_jta(pump, s.p, s.cfg.grid, s.cfg.grid, JtaOptions{false}));
    CHECK(testing::relative(ssf.norm_squared(), jta.norm_squared()) < 0.02);
    CHECK(normalized_distance(ssf, jta) < 0.06);
    CHECK(std::abs(purity(ssf) - purity(jta)) < 0.01);
  }
  SUBCASE("rate is quadratic in pump power") {
    const PairSetup s = pair_setup(true);
    const double r1 = simulate_pair_state(s.pump.with_peak_power(150.0), s.p, s.cfg).norm_squared();
    const double r2 = simulate_pair_state(s.pump.with_peak_power(300.0), s.p, s.cfg).norm_squared();
    const double r4 = simulate_pair_state(s.pump.with_peak_power(600.0), s.p, s.cfg).norm_squared();
    CHECK(r2 / r1 == doctest::Approx(4.0).epsilon(0.01));
    CHECK(r4 / r2 == doctest::Approx(4.0).epsilon(0.01));
  }
  SUBCASE("no coupling, no pairs") {
    PairSetup s = pair_setup(false, 128);
    s.p.gamma_s = 0.0;
    s.cfg = SsfConfig::for_grid(s.cfg.grid, s.p);
    const JointAmplitude out = simulate_pair_state(s.pump.with_peak_power(300.0), s.p, s.cfg);
    CHECK(out.norm_squared() == 0.0);
    CHECK(testing::error_kind([&] { normalize(out); }) == ErrorKind::degenerate_state);
  }
}
