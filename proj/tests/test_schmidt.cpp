#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <Eigen/Eigenvalues>

#include "fwmpair/error.hpp"
#include "fwmpair/schmidt.hpp"
#include "support.hpp"

using namespace fwmpair;

namespace {

JointAmplitude wrap(Eigen::MatrixXcd m, double ds = 0.3, double di = 0.7) {
  const auto rows = static_cast<std::size_t>(m.rows()), cols = static_cast<std::size_t>(m.cols());
  return JointAmplitude::time_domain(std::move(m), TemporalGrid::make(rows, ds), TemporalGrid::make(cols, di));
}

Eigen::VectorXcd gaussian(Eigen::Index n, double centre, double width, double chirp = 0.0) {
  Eigen::VectorXcd v(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double x = (static_cast<double>(j) - centre) / width;
    v(j) = std::polar(std::exp(-0.5 * x * x), chirp * x * x);
  }
  return v;
}

}  // namespace

TEST_CASE("separable state has one mode") {
  const Eigen::VectorXcd f = gaussian(40, 18, 4, 0.3), g = gaussian(30, 12, 3, -1.1);
  const SchmidtResult r = schmidt_decompose(wrap(3.0 * f * g.transpose()));
  CHECK(r.coefficients(0) == doctest::Approx(1.0));
  CHECK(r.purity == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.schmidt_number() == doctest::Approx(1.0));
  CHECK(r.signal_modes.col(0).squaredNorm() * 0.3 == doctest::Approx(1.0));
  CHECK(r.idler_modes.col(0).squaredNorm() * 0.7 == doctest::Approx(1.0));
}

TEST_CASE("two equal modes give purity one half") {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(16, 16);
  m(2, 5) = 1.0;
  m(9, 11) = cdouble{0.0, 1.0};
  const SchmidtResult r = schmidt_decompose(wrap(m));
  CHECK(r.coefficients(0) == doctest::Approx(std::sqrt(0.5)));
  CHECK(r.coefficients(1) == doctest::Approx(std::sqrt(0.5)));
  CHECK(r.purity == doctest::Approx(0.5));
  CHECK(r.schmidt_number() == doctest::Approx(2.0));
}

TEST_CASE("purity matches the reduced density matrix") {
  const Eigen::MatrixXcd m = testing::random_matrix(64, 64, 11);
  const JointAmplitude a = wrap(m);
  // rho_s = M M^dagger dA / |M|^2 dA; purity = tr(rho_s^2)
  const Eigen::MatrixXcd rho = m * m.adjoint() / m.squaredNorm();
  const Eigen::VectorXd eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(rho).eigenvalues();
  CHECK(std::abs(purity(a) - eig.squaredNorm()) < 1e-8);
  CHECK(std::abs(purity(a) - (rho * rho).trace().real()) < 1e-8);
  const SchmidtResult r = schmidt_decompose(a);
  CHECK(r.coefficients.squaredNorm() == doctest::Approx(1.0).epsilon(1e-12));
  for (Eigen::Index j = 1; j < r.coefficients.size(); ++j) CHECK(r.coefficients(j) <= r.coefficients(j - 1));
  CHECK(r.purity >= 1.0 / 64 - 1e-12);
  CHECK(r.purity <= 1.0 + 1e-12);
}

TEST_CASE("modes reconstruct the normalized amplitude") {
  const JointAmplitude a = wrap(testing::random_matrix(24, 32, 5));
  const SchmidtResult r = schmidt_decompose(a);
  Eigen::MatrixXcd rebuilt = Eigen::MatrixXcd::Zero(24, 32);
  for (Eigen::Index j = 0; j < r.coefficients.size(); ++j) {
    rebuilt += r.coefficients(j) * r.signal_modes.col(j) * r.idler_modes.col(j).transpose();
  }
  const JointAmplitude n = normalize(a);
  CHECK((rebuilt - n.matrix).norm() / n.matrix.norm() < 1e-10);
  const Eigen::MatrixXcd gram = r.signal_modes.adjoint() * r.signal_modes * 0.3;
  CHECK((gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols())).norm() < 1e-10);
  const SchmidtResult fast = schmidt_decompose(a, false);
  CHECK(fast.signal_modes.size() == 0);
  CHECK(fast.purity == doctest::Approx(r.purity).epsilon(1e-12));
}

TEST_CASE("normalize") {
  const JointAmplitude a = wrap(testing::random_matrix(20, 20, 3));
  const JointAmplitude n = normalize(a);
  CHECK(n.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(n.rate_scale == doctest::Approx(a.norm_squared()).epsilon(1e-12));
  JointAmplitude scaled = a;
  scaled.matrix *= 7.0;
  CHECK((normalize(scaled).matrix - n.matrix).norm() < 1e-12);
  CHECK(normalize(n).rate_scale == doctest::Approx(n.rate_scale).epsilon(1e-12));
}

TEST_CASE("purity invariances") {
  const JointAmplitude a = wrap(testing::random_matrix(32, 32, 8) + 5.0 * gaussian(32, 15, 4) * gaussian(32, 16, 6).transpose(), 0.5, 0.5);
  const double p = purity(a);
  JointAmplitude phased = a;
  phased.matrix *= std::polar(1.0, 2.1);
  CHECK(std::abs(purity(phased) - p) < 1e-12);
  CHECK(std::abs(purity(transform_2d(a)) - p) < 1e-12);
  // local unitaries on each photon leave the Schmidt spectrum unchanged
  JointAmplitude local = a;
  for (Eigen::Index j = 0; j < 32; ++j) local.matrix.row(j) *= std::polar(1.0, 0.37 * j * j);
  CHECK(std::abs(purity(local) - p) < 1e-12);
}

TEST_CASE("degenerate and mismatched inputs") {
  const JointAmplitude zero = wrap(Eigen::MatrixXcd::Zero(8, 8));
  CHECK(testing::error_kind([&] { schmidt_decompose(zero); }) == ErrorKind::degenerate_state);
  CHECK(testing::error_kind([&] { normalize(zero); }) == ErrorKind::degenerate_state);
  const JointAmplitude a = wrap(testing::random_matrix(8, 8, 1));
  CHECK(testing::error_kind([&] { normalized_distance(a, wrap(testing::random_matrix(8, 9, 1))); }) == ErrorKind::dimension);
}

TEST_CASE("normalized distance ignores global phase and scale") {
  const JointAmplitude a = wrap(testing::random_matrix(16, 16, 2));
  JointAmplitude b = a;
  b.matrix *= std::polar(3.0, -0.8);
  CHECK(normalized_distance(a, b) < 1e-12);
  const JointAmplitude c = wrap(testing::random_matrix(16, 16, 9));
  const double d = normalized_distance(a, c);
  CHECK(d > 0.5);
  CHECK(d <= std::sqrt(2.0) + 1e-12);
}
