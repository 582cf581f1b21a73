#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "fwmpair/analytic_jta.hpp"
#include "fwmpair/error.hpp"
#include "fwmpair/schmidt.hpp"
#include "support.hpp"

using namespace fwmpair;

namespace {

struct Setup {
  FiberParams p;
  double tau;
  TemporalGrid s, i;
  PumpEnvelope pump;
};

Setup asymmetric(double ratio, std::size_t n = 384) {
  FiberParams p = testing::fiber_a();
  const double tau = p.beta1_s * p.length / ratio;
  const double span = p.beta1_s * p.length + 16 * tau;
  const double dt = span / static_cast<double>(n);
  return Setup{p, tau, TemporalGrid::make(n, dt, 0.5 * p.beta1_s * p.length), TemporalGrid::make(n, dt, 0.0),
               gaussian_pump(TemporalGrid::make(n, dt), tau, 1.0)};
}

double simpson(const std::function<double(double)>& f, double a, double b, double tol, int depth = 40) {
  const double m = 0.5 * (a + b);
  const double whole = (b - a) / 6 * (f(a) + 4 * f(m) + f(b));
  const double left = (m - a) / 6 * (f(a) + 4 * f(0.5 * (a + m)) + f(m));
  const double right = (b - m) / 6 * (f(m) + 4 * f(0.5 * (m + b)) + f(b));
  if (depth == 0 || std::abs(left + right - whole) < 15 * tol) return left + right;
  return simpson(f, a, m, tol / 2, depth - 1) + simpson(f, m, b, tol / 2, depth - 1);
}

}  // namespace

TEST_CASE("creation coordinates") {
  FiberParams p = testing::fiber_a();
  const double eps = walkoff_epsilon(p, 1e-13);
  CHECK(creation_coords(3e-13, 3e-13, p, eps).z == doctest::Approx(p.length));
  const CreationPoint a = creation_coords(2e-12, 4e-13, p, eps);
  CHECK(a.t == 4e-13);
  p.beta1_s = 2e-12;
  p.beta1_i = -2e-12;
  const CreationPoint s = creation_coords(3e-13, 1e-13, p, walkoff_epsilon(p, 1e-13));
  CHECK(s.t == doctest::Approx(2e-13));
  CHECK(s.z == doctest::Approx(p.length - 2e-13 / (2 * 2e-12)));
  p.beta1_i = p.beta1_s;
  try {
    creation_coords(0, 0, p, walkoff_epsilon(p, 1e-13));
    FAIL("expected degenerate walk-off");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::degenerate_walkoff);
  }
}

TEST_CASE("intensity accumulator") {
  const Setup s = asymmetric(10, 512);
  const PumpIntensityAccumulator acc(s.pump);
  CHECK(acc.cumulative().front() == 0.0);
  for (std::size_t k = 1; k < acc.cumulative().size(); ++k) CHECK(acc.cumulative()[k] >= acc.cumulative()[k - 1]);
  CHECK(testing::relative(acc.cumulative().back(), s.pump.energy()) < 1e-10);
}

TEST_CASE("nonlinear phase") {
  Setup s = asymmetric(10);
  const PumpEnvelope pump = s.pump.with_peak_power(100.0);
  const PumpIntensityAccumulator acc(pump);
  const double eps = walkoff_epsilon(s.p, s.tau);
  const double ts = 2e-12, ti = 1e-13;
  const CreationPoint c = creation_coords(ts, ti, s.p, eps);

  FiberParams off = s.p;
  off.gamma_p = off.gamma_s = off.gamma_i = 0.0;
  CHECK(nonlinear_phase_theta(ts, ti, c, pump, acc, off, eps) == 0.0);

  FiberParams idler_only = off;
  idler_only.gamma_i = s.p.gamma_i;
  CHECK(nonlinear_phase_theta(ts, ti, c, pump, acc, idler_only, eps) ==
        doctest::Approx(2 * s.p.gamma_i * (s.p.length - c.z) * std::norm(pump.field_at(ti))));

  FiberParams signal_only = off;
  signal_only.gamma_s = s.p.gamma_s;
  auto power = [&](double t) { return 100.0 * std::exp(-t * t / (s.tau * s.tau)); };
  const double oracle = 2 * s.p.gamma_s / s.p.beta1_s * simpson(power, c.t, ts, 1e-9 * 100.0 * s.tau);
  CHECK(testing::relative(nonlinear_phase_theta(ts, ti, c, pump, acc, signal_only, eps), oracle) < 1e-3);

  CHECK_THROWS_AS(nonlinear_phase_theta(ts, ti, CreationPoint{2 * s.p.length, 0.0}, pump, acc, s.p, eps), Error);
}

TEST_CASE("support, walk-off smear and coverage") {
  for (double ratio : {2.0, 5.0, 10.0}) {
    const Setup s = asymmetric(ratio);
    const JointAmplitude jta = build_jta(s.pump, s.p, s.s, s.i, JtaOptions{false});
    // Column at t_i = 0: nonzero for 0 < t_s < beta1_s L.
    const auto col = static_cast<Eigen::Index>(s.i.n_points / 2);
    int count = 0;
    for (Eigen::Index j = 0; j < jta.matrix.rows(); ++j) {
      const double ts = s.s.time(static_cast<std::size_t>(j));
      const bool inside = ts > 0 && ts < s.p.beta1_s * s.p.length;
      if (!inside && (ts < -s.s.dt || ts > s.p.beta1_s * s.p.length + s.s.dt)) CHECK(jta.matrix(j, col) == cdouble{});
      if (jta.matrix(j, col) != cdouble{}) ++count;
    }
    CHECK(std::abs(count * s.s.dt - s.p.beta1_s * s.p.length) <= 2 * s.s.dt);
  }
  const Setup s = asymmetric(10);
  const TemporalGrid narrow = TemporalGrid::make(s.s.n_points, s.s.dt / 2, s.s.t_center);
  try {
    build_jta(s.pump, s.p, narrow, s.i);
    FAIL("expected coverage error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::coverage);
  }
}

TEST_CASE("generation rate") {
  const Setup s = asymmetric(10, 512);
  const double p0 = 300.0;
  const PumpEnvelope pump = s.pump.with_peak_power(p0);
  const JointAmplitude jta = build_jta(pump, s.p, s.s, s.i);
  const double closed = s.p.gamma_s * s.p.gamma_i * s.p.length / std::abs(s.p.walkoff_difference()) * p0 * p0 * s.tau *
                        std::sqrt(std::numbers::pi / 2);
  CHECK(testing::relative(generation_rate(jta), closed) < 5e-3);
  CHECK(testing::relative(generation_rate_closed_form(pump, s.p), closed) < 5e-3);
  const double doubled = generation_rate(build_jta(s.pump.with_peak_power(2 * p0), s.p, s.s, s.i));
  CHECK(testing::relative(doubled, 4 * generation_rate(jta)) < 1e-6);
  CHECK(testing::relative(transform_2d(jta).norm_squared(), generation_rate(jta)) < 1e-10);
  CHECK_THROWS_AS(generation_rate(transform_2d(jta)), Error);
  CHECK(generation_rate(JointAmplitude::time_domain(Eigen::MatrixXcd::Zero(512, 512), s.s, s.i)) == 0.0);
}

TEST_CASE("power for rate") {
  const Setup s = asymmetric(10);
  const double p1 = power_for_rate(s.pump, s.p, s.s, s.i, 0.05);
  CHECK(testing::relative(power_for_rate(s.pump, s.p, s.s, s.i, 0.2), 2 * p1) < 1e-12);
  CHECK(power_for_rate(s.pump, s.p, s.s, s.i, 0.0) == 0.0);
  const double rate = generation_rate(build_jta(s.pump.with_peak_power(p1), s.p, s.s, s.i));
  CHECK(testing::relative(rate, 0.05) < 1e-6);
}

TEST_CASE("purity trends") {
  SUBCASE("phase is invisible to |JTA|") {
    const Setup s = asymmetric(10);
    const double p0 = power_for_rate(s.pump, s.p, s.s, s.i, 0.1);
    JointAmplitude with_phase = build_jta(s.pump.with_peak_power(p0), s.p, s.s, s.i);
    const JointAmplitude without = build_jta(s.pump.with_peak_power(p0), s.p, s.s, s.i, JtaOptions{false});
    with_phase.matrix = with_phase.matrix.cwiseAbs().cast<cdouble>();
    CHECK(std::abs(purity(with_phase) - purity(without)) < 1e-10);
  }
  SUBCASE("phase-free purity rises with walk-off") {
    double last = 0.0;
    for (double ratio : {2.0, 5.0, 10.0, 20.0, 40.0}) {
      const Setup s = asymmetric(ratio);
      const double p = purity(build_jta(s.pump, s.p, s.s, s.i, JtaOptions{false}));
      CHECK(p > last);
      last = p;
    }
  }
  SUBCASE("purity falls with rate") {
    const Setup s = asymmetric(10);
    double last = purity(build_jta(s.pump, s.p, s.s, s.i, JtaOptions{false}));
    for (double rate : {0.05, 0.1, 0.15, 0.2}) {
      const double p0 = power_for_rate(s.pump, s.p, s.s, s.i, rate);
      const double p = purity(build_jta(s.pump.with_peak_power(p0), s.p, s.s, s.i));
      CHECK(p < last);
      last = p;
    }
  }
}
