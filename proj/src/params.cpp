#include "fk/params.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace fk {

static constexpr double kSqrt2 = std::numbers::sqrt2;

Params params_from_p(double p) {
  if (!(p > 0.0) || !(p < 1.0)) throw std::invalid_argument("p must lie in (0,1)");
  Params pr;
  pr.p = p;
  pr.x = p / ((1.0 - p) * kSqrt2);
  pr.beta = -0.5 * std::log1p(-p);
  const std::complex<double> z = std::polar(1.0, std::numbers::pi / 4.0);
  std::complex<double> ph = (z + pr.x) / (z * pr.x + 1.0);
  // principal value: x<1 gives a in (0, pi/4], the dual density flips the sign
  double a = std::arg(ph);
  pr.alpha = a;
  pr.mass = std::cos(2.0 * a);
  return pr;
}

Params params_from_beta(double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");
  return params_from_p(-std::expm1(-2.0 * beta));
}

double dual_p(double p, double q) {
  if (!(p >= 0.0) || !(p <= 1.0) || !(q > 0.0)) throw std::invalid_argument("dual_p domain");
  return (1.0 - p) * q / ((1.0 - p) * q + p);
}

double self_dual_p() { return kSqrt2 / (1.0 + kSqrt2); }

double critical_beta() { return 0.5 * std::log(1.0 + kSqrt2); }

}  // namespace fk
