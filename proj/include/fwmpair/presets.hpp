#pragma once

#include <string>
#include <vector>

#include "fwmpair/fiber.hpp"

namespace fwmpair {

struct FiberPreset {
  std::string name;
  std::string version;
  std::string description;
  FiberParams params;
};

/// Built-in fibres. gamma_p is a placeholder (0.01 /W/m): every sweep is
/// indexed by generation rate, so only products gamma * power matter and
/// the absolute value drops out. Idler wavelengths follow from energy
/// conservation.
const std::vector<FiberPreset>& fiber_presets();

/// Configuration error for unknown names.
const FiberPreset& find_preset(const std::string& name);

}  // namespace fwmpair
