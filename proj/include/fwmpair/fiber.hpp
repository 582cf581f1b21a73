#pragma once

namespace fwmpair {

/// Fibre and phase-matching parameters in the pump's moving frame.
///
/// beta1_s and beta1_i are inverse group velocities relative to the pump
/// (beta1_m - beta1_p, s/m). The carrier wavelengths are a point of exact
/// phase matching, so absolute wavevectors never appear.
struct FiberParams {
  double length = 0.0;  // m
  double beta1_s = 0.0;
  double beta1_i = 0.0;
  double beta2_p = 0.0;  // s^2/m
  double beta2_s = 0.0;
  double beta2_i = 0.0;
  double gamma_p = 0.0;  // 1/(W m)
  double gamma_s = 0.0;
  double gamma_i = 0.0;
  double lambda_p0 = 0.0;  // m
  double lambda_s0 = 0.0;
  double lambda_i0 = 0.0;

  /// Throws a configuration error if any invariant fails, including energy
  /// conservation 2/lp = 1/ls + 1/li to 1e-6.
  void validate() const;

  /// Signal and idler polarized orthogonally to the pump: the cross-coupled
  /// nonlinearity drops by three and scales with carrier frequency.
  static FiberParams birefringent(double length, double beta1_s, double beta1_i, double beta2_p, double beta2_s,
                                  double beta2_i, double gamma_p, double lambda_p0, double lambda_s0,
                                  double lambda_i0);

  /// Idler wavelength fixed by energy conservation.
  static double conjugate_wavelength(double lambda_p0, double lambda_s0);

  double walkoff_difference() const { return beta1_s - beta1_i; }
};

}  // namespace fwmpair
