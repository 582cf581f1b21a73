#pragma once

#include "fwmpair/grid.hpp"

namespace fwmpair {

/// Coefficients below this are treated as numerical noise when reporting
/// purity.
inline constexpr double schmidt_truncation = 1e-12;

struct SchmidtResult {
  Eigen::VectorXd coefficients;  // descending, sum of squares 1
  /// Column j is mode j, sampled as a density on its axis: sum |f_j|^2 d = 1.
  /// Empty when modes were not requested.
  Eigen::MatrixXcd signal_modes;
  Eigen::MatrixXcd idler_modes;
  double purity = 0.0;

  double schmidt_number() const { return 1.0 / purity; }
};

/// Unit measure-weighted norm; rate_scale records the norm squared of the
/// input (its pair probability) so the rate survives normalization.
JointAmplitude normalize(const JointAmplitude& amplitude);

/// SVD of the amplitude with sqrt(dA) folded in. The input need not be
/// normalized; M = sum_j lambda_j f_j g_j^T reconstructs normalize(M).
SchmidtResult schmidt_decompose(const JointAmplitude& amplitude, bool with_modes = true);

/// sum lambda^4 over coefficients above the truncation.
double purity(const SchmidtResult& result);
double purity(const Eigen::VectorXd& coefficients);

/// Singular values only; the fast path for sweeps.
double purity(const JointAmplitude& amplitude);

}  // namespace fwmpair

namespace fwmpair {

/// Measure-weighted L2 distance between the normalized amplitudes after
/// removing the relative global phase, which no measurement can see.
/// Lies in [0, sqrt(2)].
double normalized_distance(const JointAmplitude& a, const JointAmplitude& b);

}  // namespace fwmpair
