#include "fwmpair/filtering.hpp"

#include <sstream>

#include "fwmpair/error.hpp"
#include "fwmpair/schmidt.hpp"

namespace fwmpair {

namespace {

const SpectralGrid& filtered_axis(const JointAmplitude& jsa, FilterAxis axis) {
  jsa.validate();
  if (jsa.domain() != Domain::frequency) fail(ErrorKind::domain, "filters act on a frequency-domain amplitude");
  return std::get<SpectralGrid>(axis == FilterAxis::signal ? jsa.signal_axis : jsa.idler_axis);
}

}  // namespace

FilterResult apply_filter(const JointAmplitude& jsa, const FilterSpec& filter) {
  const SpectralGrid& grid = filtered_axis(jsa, filter.axis);
  if (!(filter.width > 0.0)) fail(ErrorKind::domain, "filter width must be positive");
  const double total = jsa.matrix.squaredNorm();
  if (!(total > 0.0)) fail(ErrorKind::degenerate_state, "cannot filter a zero amplitude");

  const double lo = filter.center - 0.5 * filter.width;
  const double hi = filter.center + 0.5 * filter.width;
  JointAmplitude out = jsa;
  std::size_t passed = 0;
  for (std::size_t k = 0; k < grid.n_points; ++k) {
    const double w = grid.detuning(k);
    if (w >= lo && w < hi) {
      ++passed;
      continue;
    }
    const auto m = static_cast<Eigen::Index>(k);
    if (filter.axis == FilterAxis::signal) {
      out.matrix.row(m).setZero();
    } else {
      out.matrix.col(m).setZero();
    }
  }
  const double kept = out.matrix.squaredNorm();
  if (passed == 0 || !(kept > 0.0)) {
    std::ostringstream msg;
    msg << "filter [" << lo << ", " << hi << ") rad/s transmits nothing";
    fail(ErrorKind::degenerate_transmission, msg.str());
  }
  return FilterResult{std::move(out), kept / total};
}

double marginal_centroid(const JointAmplitude& jsa, FilterAxis axis) {
  const SpectralGrid& grid = filtered_axis(jsa, axis);
  const Eigen::VectorXd marginal = axis == FilterAxis::signal ? Eigen::VectorXd(jsa.matrix.cwiseAbs2().rowwise().sum())
                                                              : Eigen::VectorXd(jsa.matrix.cwiseAbs2().colwise().sum().transpose());
  const double total = marginal.sum();
  if (!(total > 0.0)) fail(ErrorKind::degenerate_state, "zero amplitude has no centroid");
  return marginal.dot(grid.detunings()) / total;
}

std::vector<FilterCurve> purity_vs_effective_rate(const std::function<JointAmplitude(double)>& build,
                                                  const std::vector<double>& rates, const std::vector<double>& widths,
                                                  FilterAxis axis, std::optional<double> center) {
  std::vector<FilterCurve> curves;
  for (double rate : rates) {
    if (!(rate > 0.0)) fail(ErrorKind::domain, "unfiltered rates must be positive");
    const JointAmplitude jsa = build(rate);
    FilterCurve curve{rate, center.value_or(marginal_centroid(jsa, axis)), {}};
    for (double width : widths) {
      const FilterResult filtered = apply_filter(jsa, FilterSpec{axis, curve.center, width});
      curve.points.push_back(FilterPoint{width, filtered.transmission, effective_rate(rate, filtered.transmission),
                                         purity(filtered.amplitude)});
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

}  // namespace fwmpair
