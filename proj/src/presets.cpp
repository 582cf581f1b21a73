#include "fwmpair/presets.hpp"

#include "fwmpair/error.hpp"

namespace fwmpair {

namespace {

constexpr double placeholder_gamma = 0.01;

FiberPreset make_preset(std::string name, std::string description, double beta1_s, double beta1_i, double beta2_p,
                        double beta2_s, double beta2_i, double lambda_p, double lambda_s) {
  const double lambda_i = FiberParams::conjugate_wavelength(lambda_p, lambda_s);
  return FiberPreset{std::move(name), "1", std::move(description),
                     FiberParams::birefringent(0.5, beta1_s, beta1_i, beta2_p, beta2_s, beta2_i, placeholder_gamma,
                                               lambda_p, lambda_s, lambda_i)};
}

}  // namespace

const std::vector<FiberPreset>& fiber_presets() {
  static const std::vector<FiberPreset> presets{
      make_preset("fiberA-726", "726 nm pump, 626 nm signal, idler group-velocity matched to the pump", 1.14e-11, 0.0,
                  2.1e-26, 3.6e-26, -1.3e-26, 726e-9, 626e-9),
      make_preset("fiberB-1064", "1064 nm pump, 810 nm signal group-velocity matched, telecom idler", 0.0, 1.2e-11,
                  -8.7e-27, 1.0e-26, -6.4e-26, 1064e-9, 810e-9),
      make_preset("symmetric-726", "fiberA carriers with signal and idler walking off equally in opposite directions",
                  0.57e-11, -0.57e-11, 0.0, 0.0, 0.0, 726e-9, 626e-9),
  };
  return presets;
}

const FiberPreset& find_preset(const std::string& name) {
  for (const auto& preset : fiber_presets()) {
    if (preset.name == name) return preset;
  }
  std::string known;
  for (const auto& preset : fiber_presets()) known += (known.empty() ? "" : ", ") + preset.name;
  fail(ErrorKind::configuration, "unknown fibre preset '" + name + "' (known: " + known + ")");
}

}  // namespace fwmpair
