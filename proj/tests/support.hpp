#pragma once

#include <optional>
#include <random>

#include <Eigen/Core>

#include "fwmpair/error.hpp"
#include "fwmpair/fiber.hpp"
#include "fwmpair/grid.hpp"
#include "fwmpair/presets.hpp"

namespace testing {

inline Eigen::MatrixXcd random_matrix(Eigen::Index rows, Eigen::Index cols, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index k = 0; k < cols; ++k) {
    for (Eigen::Index j = 0; j < rows; ++j) m(j, k) = {normal(rng), normal(rng)};
  }
  return m;
}

// Kind of the fwmpair::Error thrown by f, or nullopt if it returns.
template <class F>
std::optional<fwmpair::ErrorKind> error_kind(F&& f) {
  try {
    f();
  } catch (const fwmpair::Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

inline double relative(double a, double b) { return std::abs(a - b) / std::abs(b); }

// fiberA with every nonlinearity and dispersion term explicit.
inline fwmpair::FiberParams fiber_a() { return fwmpair::find_preset("fiberA-726").params; }

}  // namespace testing
