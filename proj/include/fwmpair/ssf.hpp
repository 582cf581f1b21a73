#pragma once

#include <cstddef>
#include <vector>

#include "fwmpair/fiber.hpp"
#include "fwmpair/grid.hpp"
#include "fwmpair/pump.hpp"

namespace fwmpair {

/// Split-step discretization. The pump, signal and idler share one time
/// grid; dz = L / n_steps.
struct SsfConfig {
  std::size_t n_steps = 0;
  TemporalGrid grid;

  double dz(const FiberParams& p) const { return p.length / static_cast<double>(n_steps); }
  /// Configuration error unless max(|beta1_s|, |beta1_i|) dz < dt.
  void validate(const FiberParams& p) const;
  /// Smallest step count satisfying the constraint with the given margin
  /// (margin 2 gives dz = dt / (2 max|beta1|)).
  static SsfConfig for_grid(const TemporalGrid& grid, const FiberParams& p, double margin = 2.0);
};

/// Switches for isolating individual operators; all on for the full model.
struct SsfOptions {
  bool pump_spm = true;
  bool pair_xpm = true;
  bool inject = true;
};

struct PumpEvolution {
  /// Pump after half a dispersion step and half the SPM of step q.
  std::vector<PumpEnvelope> midpoints;
  PumpEnvelope output;
};

/// Strang splitting of the pump NLSE in its own moving frame.
PumpEvolution propagate_pump(const PumpEnvelope& pump, const FiberParams& p, const SsfConfig& cfg,
                             const SsfOptions& options = {});

/// Multiplies by exp(i (beta1 dw + beta2/2 dw^2) dz/2) on each axis; a
/// positive relative beta1 delays the photon.
JointAmplitude pair_dispersion_half_step(const JointAmplitude& jsa, const FiberParams& p, double dz);

/// Pump-induced XPM on both photons over one full step.
JointAmplitude pair_xpm_step(const JointAmplitude& jta, const PumpEnvelope& pump_at_z, const FiberParams& p, double dz);

/// Adds i sqrt(gamma_s gamma_i) E^2 dz/dt on the diagonal t_s = t_i.
JointAmplitude fwm_inject_step(const JointAmplitude& jta, const PumpEnvelope& pump_at_z, const FiberParams& p,
                               double dz);

/// Two-photon state at the fibre output, frequency domain on the dual of
/// cfg.grid, unnormalized (its norm squared is the pair probability).
JointAmplitude simulate_pair_state(const PumpEnvelope& pump, const FiberParams& p, const SsfConfig& cfg,
                                   const SsfOptions& options = {});

struct ConvergenceRow {
  std::size_t n_steps = 0;
  double dz = 0.0;
  double deviation = 0.0;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;  // coarse to fine; the last row is the reference
  /// Least-squares slope of log(deviation) against log(dz), reference excluded.
  double fitted_order = 0.0;
};

/// Relative L2 deviation of the output pump from the finest run.
ConvergenceTable pump_convergence(const PumpEnvelope& pump, const FiberParams& p, const std::vector<std::size_t>& steps,
                                  const SsfOptions& options = {});

/// Normalized-JSA distance of each run from the finest.
ConvergenceTable pair_convergence(const PumpEnvelope& pump, const FiberParams& p, const std::vector<std::size_t>& steps,
                                  const SsfOptions& options = {});

}  // namespace fwmpair
