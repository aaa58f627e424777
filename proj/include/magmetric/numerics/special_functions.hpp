#pragma once

namespace magmetric::numerics {

/// Generalized Laguerre polynomial L_n^a(x) by the three-term recurrence.
double associated_laguerre(int n, double a, double x);

/// Exponentially scaled modified Bessel functions e^{-x} I_k(x), x >= 0.
/// Finite for any x, which matters because the density kernels multiply
/// I_k(2Ωsu) by a Gaussian that cancels its growth.
double bessel_i0e(double x);
double bessel_i1e(double x);

}  // namespace magmetric::numerics
