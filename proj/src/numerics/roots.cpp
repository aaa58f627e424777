#include "magmetric/numerics/roots.hpp"

#include <boost/math/tools/toms748_solve.hpp>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include "magmetric/errors.hpp"

namespace magmetric::numerics {

double find_root_bracketed(const std::function<double(double)>& f, double a, double b, double tol,
                           int max_iter) {
  if (!(tol > 0.0)) throw InputError("find_root_bracketed: tol must be positive");
  if (!std::isfinite(a) || !std::isfinite(b)) throw InputError("find_root_bracketed: non-finite bracket");
  if (a > b) std::swap(a, b);
  const double fa = f(a), fb = f(b);
  if (!std::isfinite(fa) || !std::isfinite(fb)) throw BracketError("find_root_bracketed: non-finite endpoint value");
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0))
    throw BracketError("no sign change on [" + std::to_string(a) + ", " + std::to_string(b) + "]");

  std::uintmax_t iters = static_cast<std::uintmax_t>(max_iter);
  auto done = [tol](double lo, double hi) { return std::abs(hi - lo) < tol; };
  try {
    const auto [lo, hi] = boost::math::tools::toms748_solve(f, a, b, fa, fb, done, iters);
    if (iters >= static_cast<std::uintmax_t>(max_iter) && !done(lo, hi))
      throw ConvergenceError("find_root_bracketed: iteration limit reached with bracket width " +
                             std::to_string(hi - lo));
    return 0.5 * (lo + hi);
  } catch (const boost::math::evaluation_error& e) {
    throw ConvergenceError(std::string("find_root_bracketed: ") + e.what());
  }
}

}  // namespace magmetric::numerics
