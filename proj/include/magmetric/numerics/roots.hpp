#pragma once

#include <functional>

namespace magmetric::numerics {

/// Root of f on [a, b] (either order). Requires a sign change; returns the
/// midpoint of a final bracket narrower than `tol`. An endpoint that is an
/// exact zero is returned as-is.
///
/// Throws BracketError when f(a) and f(b) share a sign, ConvergenceError when
/// `max_iter` evaluations are not enough.
double find_root_bracketed(const std::function<double(double)>& f, double a, double b, double tol,
                           int max_iter = 200);

}  // namespace magmetric::numerics
