#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fwmpair/error.hpp"
#include "fwmpair/filtering.hpp"
#include "fwmpair/schmidt.hpp"
#include "support.hpp"

using namespace fwmpair;

namespace {

// Correlated, off-centre test state: a tilted gaussian ridge plus a weak
// satellite so the marginals are asymmetric.
JointAmplitude ridge(double scale = 1.0) {
  const SpectralGrid g = SpectralGrid::make(96, 0.5);
  Eigen::MatrixXcd m(96, 96);
  for (Eigen::Index j = 0; j < 96; ++j) {
    for (Eigen::Index k = 0; k < 96; ++k) {
      const double ws = g.detuning(static_cast<std::size_t>(j)), wi = g.detuning(static_cast<std::size_t>(k));
      const double sum = ws + wi - 1.0, diff = ws - wi;
      m(j, k) = scale * (std::exp(-sum * sum / 4.0 - diff * diff / 60.0) +
                         0.3 * std::exp(-std::pow(ws - 5.0, 2) - std::pow(wi + 3.0, 2)));
    }
  }
  return JointAmplitude::frequency_domain(std::move(m), g, g);
}

double direct_transmission(const JointAmplitude& a, double lo, double hi) {
  const auto& g = std::get<SpectralGrid>(a.idler_axis);
  double kept = 0.0;
  for (std::size_t k = 0; k < g.n_points; ++k) {
    const double w = g.detuning(k);
    if (w >= lo && w < hi) kept += a.matrix.col(static_cast<Eigen::Index>(k)).squaredNorm();
  }
  return kept / a.matrix.squaredNorm();
}

}  // namespace

TEST_CASE("full window passes everything") {
  const JointAmplitude a = ridge();
  const FilterResult r = apply_filter(a, FilterSpec{FilterAxis::idler, 0.0, 1000.0});
  CHECK(r.transmission == 1.0);
  CHECK(r.amplitude.matrix == a.matrix);
  CHECK(purity(r.amplitude) == purity(a));
}

TEST_CASE("single bin gives a pure state") {
  const JointAmplitude a = ridge();
  CHECK(purity(a) < 0.6);
  for (FilterAxis axis : {FilterAxis::signal, FilterAxis::idler}) {
    const FilterResult r = apply_filter(a, FilterSpec{axis, 0.0, 0.5});
    CHECK(purity(r.amplitude) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.transmission > 0.0);
    CHECK(r.transmission < 0.1);
  }
}

TEST_CASE("transmission") {
  const JointAmplitude a = ridge(3.0);
  double last = 0.0;
  for (double width : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0}) {
    const FilterResult r = apply_filter(a, FilterSpec{FilterAxis::idler, 0.7, width});
    CHECK(r.transmission >= last);
    CHECK(r.transmission == doctest::Approx(direct_transmission(a, 0.7 - width / 2, 0.7 + width / 2)).epsilon(1e-12));
    CHECK(r.amplitude.norm_squared() == doctest::Approx(r.transmission * a.norm_squared()).epsilon(1e-12));
    last = r.transmission;
  }
  CHECK(effective_rate(0.1, 0.25) == doctest::Approx(0.025));
}

TEST_CASE("marginal centroid") {
  const JointAmplitude a = ridge();
  const auto& g = std::get<SpectralGrid>(a.signal_axis);
  double num = 0.0, den = 0.0;
  for (Eigen::Index j = 0; j < 96; ++j) {
    const double w = a.matrix.row(j).squaredNorm();
    num += w * g.detuning(static_cast<std::size_t>(j));
    den += w;
  }
  CHECK(marginal_centroid(a, FilterAxis::signal) == doctest::Approx(num / den).epsilon(1e-12));
  CHECK(marginal_centroid(a, FilterAxis::signal) > marginal_centroid(a, FilterAxis::idler));
}

TEST_CASE("filter errors") {
  const JointAmplitude a = ridge();
  CHECK(testing::error_kind([&] { apply_filter(a, FilterSpec{FilterAxis::idler, 1000.0, 1.0}); }) ==
        ErrorKind::degenerate_transmission);
  // A window between two bins transmits nothing either.
  CHECK(testing::error_kind([&] { apply_filter(a, FilterSpec{FilterAxis::idler, 0.25, 0.1}); }) ==
        ErrorKind::degenerate_transmission);
  CHECK(testing::error_kind([&] { apply_filter(a, FilterSpec{FilterAxis::idler, 0.0, 0.0}); }) == ErrorKind::domain);
  CHECK(testing::error_kind([&] { apply_filter(transform_2d(a), FilterSpec{FilterAxis::idler, 0.0, 1.0}); }) ==
        ErrorKind::domain);
  const JointAmplitude zero = JointAmplitude::frequency_domain(Eigen::MatrixXcd::Zero(96, 96),
                                                               std::get<SpectralGrid>(a.signal_axis),
                                                               std::get<SpectralGrid>(a.idler_axis));
  CHECK(testing::error_kind([&] { apply_filter(zero, FilterSpec{FilterAxis::idler, 0.0, 1.0}); }) ==
        ErrorKind::degenerate_state);
}

TEST_CASE("purity against effective rate") {
  auto build = [](double rate) { return ridge(std::sqrt(rate)); };
  const std::vector<double> widths{0.5, 2.0, 8.0, 1000.0};
  const auto curves = purity_vs_effective_rate(build, {0.02, 0.1}, widths, FilterAxis::idler);
  REQUIRE(curves.size() == 2);
  for (const auto& c : curves) {
    CHECK(c.center == doctest::Approx(marginal_centroid(ridge(), FilterAxis::idler)));
    REQUIRE(c.points.size() == widths.size());
    CHECK(c.points.back().transmission == 1.0);
    CHECK(c.points.back().effective_rate == doctest::Approx(c.rate));
    CHECK(c.points.back().purity == doctest::Approx(purity(ridge())).epsilon(1e-12));
    for (std::size_t k = 1; k < c.points.size(); ++k) CHECK(c.points[k].purity <= c.points[k - 1].purity + 1e-12);
  }
  CHECK(curves[1].points[1].effective_rate == doctest::Approx(5 * curves[0].points[1].effective_rate));
  const auto fixed = purity_vs_effective_rate(build, {0.1}, widths, FilterAxis::idler, 2.0);
  CHECK(fixed[0].center == 2.0);
  CHECK(testing::error_kind([&] { purity_vs_effective_rate(build, {0.0}, widths, FilterAxis::idler); }) ==
        ErrorKind::domain);
}
