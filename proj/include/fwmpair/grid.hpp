#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <variant>

#include <Eigen/Core>

namespace fwmpair {

using cdouble = std::complex<double>;

/// Uniform sampling of moving-frame time. Sample j sits at
/// t_center + (j - n/2) dt, so t_center is the frame time of the central
/// sample; pumps are built with their peak at t = 0.
struct TemporalGrid {
  std::size_t n_points = 0;
  double dt = 0.0;
  double t_center = 0.0;

  static TemporalGrid make(std::size_t n_points, double dt, double t_center = 0.0);

  double time(std::size_t j) const {
    return t_center + (static_cast<double>(j) - static_cast<double>(n_points / 2)) * dt;
  }
  double span() const { return static_cast<double>(n_points) * dt; }
  double first() const { return time(0); }
  double last() const { return time(n_points - 1); }
  Eigen::VectorXd times() const;

  friend bool operator==(const TemporalGrid&, const TemporalGrid&) = default;
};

/// Uniform sampling of detuning from a carrier. The conjugate fields record
/// the time grid this lattice is dual to, so a round trip is bit-exact.
struct SpectralGrid {
  std::size_t n_points = 0;
  double d_omega = 0.0;
  double omega_center = 0.0;
  double conjugate_dt = 0.0;
  double conjugate_t_center = 0.0;

  /// Grid with an explicit spacing; the conjugate time step follows from it.
  static SpectralGrid make(std::size_t n_points, double d_omega, double omega_center = 0.0);

  double detuning(std::size_t k) const {
    return omega_center + (static_cast<double>(k) - static_cast<double>(n_points / 2)) * d_omega;
  }
  double span() const { return static_cast<double>(n_points) * d_omega; }
  Eigen::VectorXd detunings() const;

  friend bool operator==(const SpectralGrid&, const SpectralGrid&) = default;
};

SpectralGrid dual_grid(const TemporalGrid& grid);
TemporalGrid dual_grid(const SpectralGrid& grid);

enum class Direction { time_to_frequency, frequency_to_time };

/// Unitary centred DFT. Time to frequency uses the kernel
/// exp(+i dw (k - n/2) dt (j - n/2)), so a detuning component carries the
/// time dependence exp(-i dw t).
Eigen::VectorXcd transform_1d(std::span<const cdouble> samples, std::size_t n_points, Direction direction);
Eigen::VectorXcd transform_1d(const Eigen::VectorXcd& samples, const TemporalGrid& grid, Direction direction);

/// Apply the 1D transform along one matrix axis in place (0 = down columns,
/// i.e. along the row index; 1 = along each row).
void transform_axis(Eigen::MatrixXcd& matrix, int axis, Direction direction);

/// Spectral samples scaled to a continuous density: sqrt(dt / dw) times the
/// unitary transform, so sum |E(w)|^2 dw equals sum |E(t)|^2 dt.
Eigen::VectorXcd spectral_density(const Eigen::VectorXcd& samples, const TemporalGrid& grid);
Eigen::VectorXcd temporal_samples(const Eigen::VectorXcd& density, const SpectralGrid& grid);

enum class Domain { time, frequency };

using AxisGrid = std::variant<TemporalGrid, SpectralGrid>;

std::size_t axis_size(const AxisGrid& axis);
double axis_step(const AxisGrid& axis);
Eigen::VectorXd axis_coordinates(const AxisGrid& axis);

/// Two-photon amplitude over (signal, idler). Rows index the signal axis,
/// columns the idler axis. Values are densities with respect to the axis
/// measure, so sum |M|^2 dA is a probability in either domain.
struct JointAmplitude {
  Eigen::MatrixXcd matrix;
  AxisGrid signal_axis;
  AxisGrid idler_axis;
  /// Pair probability carried by this amplitude when it has been normalized;
  /// 1 for an amplitude that has never been through `normalize`.
  double rate_scale = 1.0;

  static JointAmplitude time_domain(Eigen::MatrixXcd matrix, const TemporalGrid& signal, const TemporalGrid& idler);
  static JointAmplitude frequency_domain(Eigen::MatrixXcd matrix, const SpectralGrid& signal, const SpectralGrid& idler);

  Domain domain() const;
  double area_element() const { return axis_step(signal_axis) * axis_step(idler_axis); }
  /// Measure-weighted squared L2 norm.
  double norm_squared() const { return matrix.squaredNorm() * area_element(); }
  /// Throws if the tag, axis kinds and matrix shape disagree.
  void validate() const;
};

/// Opposite-domain amplitude on the dual axes; unitary with the axis measure
/// folded in.
JointAmplitude transform_2d(const JointAmplitude& amplitude);

}  // namespace fwmpair
