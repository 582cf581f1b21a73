#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "fwmpair/grid.hpp"

namespace fwmpair {

enum class FilterAxis { signal, idler };

/// Top-hat passband [center - width/2, center + width/2) in detuning (rad/s).
struct FilterSpec {
  FilterAxis axis = FilterAxis::idler;
  double center = 0.0;
  double width = 0.0;
};

struct FilterResult {
  JointAmplitude amplitude;  // unnormalized
  double transmission = 0.0;
};

FilterResult apply_filter(const JointAmplitude& jsa, const FilterSpec& filter);

inline double effective_rate(double rate, double transmission) { return rate * transmission; }

/// Intensity-weighted mean detuning of one photon's marginal.
double marginal_centroid(const JointAmplitude& jsa, FilterAxis axis);

struct FilterPoint {
  double width = 0.0;
  double transmission = 0.0;
  double effective_rate = 0.0;
  double purity = 0.0;
};

struct FilterCurve {
  double rate = 0.0;  // unfiltered
  double center = 0.0;
  std::vector<FilterPoint> points;
};

/// One curve per unfiltered rate. `build` returns the frequency-domain JSA
/// for a rate; the window is centred on its marginal centroid unless a
/// centre is given.
std::vector<FilterCurve> purity_vs_effective_rate(const std::function<JointAmplitude(double)>& build,
                                                  const std::vector<double>& rates, const std::vector<double>& widths,
                                                  FilterAxis axis, std::optional<double> center = std::nullopt);

}  // namespace fwmpair
