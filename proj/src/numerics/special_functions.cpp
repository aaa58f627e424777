#include "magmetric/numerics/special_functions.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <numbers>

#include "magmetric/errors.hpp"

namespace magmetric::numerics {

double associated_laguerre(int n, double a, double x) {
  if (n < 0) throw DomainError("associated_laguerre: n must be non-negative");
  if (!(a > -1.0)) throw DomainError("associated_laguerre: a must exceed -1");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + a - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + a - x) * cur - (k + a) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

namespace {

// Hankel asymptotic series for e^{-x} I_nu(x), nu = 0 or 1. At x >= 500 the
// terms fall off like (1/x)^k so a dozen terms reach machine precision.
double scaled_asymptotic(int nu, double x) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 30; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -(mu - odd * odd) / (k * 8.0 * x);
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

double scaled(int nu, double x) {
  if (x < 0.0) throw DomainError("scaled Bessel function needs x >= 0");
  if (x < 500.0) return boost::math::cyl_bessel_i(nu, x) * std::exp(-x);
  return scaled_asymptotic(nu, x);
}

}  // namespace

double bessel_i0e(double x) { return scaled(0, x); }
double bessel_i1e(double x) { return scaled(1, x); }

}  // namespace magmetric::numerics
