#include "fwmpair/schmidt.hpp"

#include <cmath>

#include <Eigen/SVD>

#include "fwmpair/error.hpp"

namespace fwmpair {

JointAmplitude normalize(const JointAmplitude& amplitude) {
  amplitude.validate();
  const double norm2 = amplitude.norm_squared();
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) fail(ErrorKind::degenerate_state, "cannot normalize a zero amplitude");
  JointAmplitude out = amplitude;
  out.matrix /= std::sqrt(norm2);
  out.rate_scale = norm2 * amplitude.rate_scale;
  return out;
}

SchmidtResult schmidt_decompose(const JointAmplitude& amplitude, bool with_modes) {
  amplitude.validate();
  const double ds = axis_step(amplitude.signal_axis);
  const double di = axis_step(amplitude.idler_axis);
  const Eigen::MatrixXcd weighted = amplitude.matrix * std::sqrt(ds * di);
  const double norm = weighted.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) fail(ErrorKind::degenerate_state, "cannot decompose a zero amplitude");

  const unsigned options = with_modes ? (Eigen::ComputeThinU | Eigen::ComputeThinV) : 0u;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(weighted / norm, options);

  SchmidtResult result;
  result.coefficients = svd.singularValues();
  if (with_modes) {
    result.signal_modes = svd.matrixU() / std::sqrt(ds);
    result.idler_modes = svd.matrixV().conjugate() / std::sqrt(di);
  }
  result.purity = purity(result.coefficients);
  return result;
}

double purity(const Eigen::VectorXd& coefficients) {
  double sum = 0.0;
  for (double c : coefficients) {
    if (c > schmidt_truncation) sum += c * c * c * c;
  }
  return sum;
}

double purity(const SchmidtResult& result) { return purity(result.coefficients); }

double purity(const JointAmplitude& amplitude) { return schmidt_decompose(amplitude, false).purity; }

}  // namespace fwmpair

namespace fwmpair {

double normalized_distance(const JointAmplitude& a, const JointAmplitude& b) {
  a.validate();
  b.validate();
  if (a.matrix.rows() != b.matrix.rows() || a.matrix.cols() != b.matrix.cols() || a.domain() != b.domain()) {
    fail(ErrorKind::dimension, "amplitudes compared on different grids");
  }
  const double na = a.matrix.norm();
  const double nb = b.matrix.norm();
  if (!(na > 0.0) || !(nb > 0.0)) fail(ErrorKind::degenerate_state, "cannot compare a zero amplitude");
  const cdouble overlap = (b.matrix.array().conjugate() * a.matrix.array()).sum() / (na * nb);
  const double magnitude = std::abs(overlap);
  const cdouble align = magnitude > 0.0 ? overlap / magnitude : cdouble{1.0, 0.0};
  return (a.matrix / na - align * b.matrix / nb).norm();
}

}  // namespace fwmpair
