#include "fwmpair/fiber.hpp"

#include <cmath>
#include <sstream>

#include "fwmpair/error.hpp"

namespace fwmpair {

void FiberParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) fail(ErrorKind::configuration, std::string("fibre parameters: ") + what);
  };
  require(length > 0.0 && std::isfinite(length), "length must be positive");
  require(gamma_p > 0.0, "gamma_p must be positive");
  require(gamma_s >= 0.0 && gamma_i >= 0.0, "gamma_s and gamma_i must be non-negative");
  require(lambda_p0 > 0.0 && lambda_s0 > 0.0 && lambda_i0 > 0.0, "carrier wavelengths must be positive");
  for (double b : {beta1_s, beta1_i, beta2_p, beta2_s, beta2_i}) require(std::isfinite(b), "dispersion must be finite");
  const double pump_term = 2.0 / lambda_p0;
  const double mismatch = pump_term - 1.0 / lambda_s0 - 1.0 / lambda_i0;
  if (std::abs(mismatch) > 1e-6 * pump_term) {
    std::ostringstream msg;
    msg << "fibre parameters: carriers violate energy conservation (relative mismatch "
        << std::abs(mismatch) / pump_term << ")";
    fail(ErrorKind::configuration, msg.str());
  }
}

FiberParams FiberParams::birefringent(double length, double beta1_s, double beta1_i, double beta2_p, double beta2_s,
                                      double beta2_i, double gamma_p, double lambda_p0, double lambda_s0,
                                      double lambda_i0) {
  FiberParams p;
  p.length = length;
  p.beta1_s = beta1_s;
  p.beta1_i = beta1_i;
  p.beta2_p = beta2_p;
  p.beta2_s = beta2_s;
  p.beta2_i = beta2_i;
  p.gamma_p = gamma_p;
  // omega_m / omega_p0 = lambda_p0 / lambda_m
  p.gamma_s = gamma_p * (lambda_p0 / lambda_s0) / 3.0;
  p.gamma_i = gamma_p * (lambda_p0 / lambda_i0) / 3.0;
  p.lambda_p0 = lambda_p0;
  p.lambda_s0 = lambda_s0;
  p.lambda_i0 = lambda_i0;
  p.validate();
  return p;
}

double FiberParams::conjugate_wavelength(double lambda_p0, double lambda_s0) {
  const double inverse = 2.0 / lambda_p0 - 1.0 / lambda_s0;
  if (!(inverse > 0.0)) fail(ErrorKind::configuration, "no conjugate wavelength for these carriers");
  return 1.0 / inverse;
}

}  // namespace fwmpair
