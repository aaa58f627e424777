#include "magmetric/numerics/radial_eigen.hpp"

#include <algorithm>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "magmetric/errors.hpp"
#include "magmetric/numerics/roots.hpp"

namespace magmetric::numerics {

namespace odeint = boost::numeric::odeint;

void RadialPotential::validate() const {
  if (!(mu > 0.0)) throw DomainError("radial potential: mu must be positive");
  if (!(omega_eff > 0.0)) throw DomainError("radial potential: omega_eff must be positive");
  if (!(m_eff >= 0.0)) throw DomainError("radial potential: m_eff must be non-negative");
  if (!std::isfinite(coulomb_coeff)) throw DomainError("radial potential: coulomb_coeff must be finite");
}

double RadialPotential::oscillator_energy(int n_r) const { return omega_eff * (2.0 * n_r + 1.0 + m_eff); }

double default_radial_extent(const RadialPotential& pot, int n_r) {
  pot.validate();
  return 6.0 * std::sqrt((2.0 * n_r + pot.m_eff + 1.0) / (pot.mu * pot.omega_eff));
}

RadialGrid default_radial_grid(const RadialPotential& pot, int n_r, int panels, int order) {
  return RadialGrid::composite(default_radial_extent(pot, n_r), panels, order);
}

int count_sign_changes(const std::vector<double>& f) {
  double peak = 0.0;
  for (double v : f) peak = std::max(peak, std::abs(v));
  const double floor = 1e-10 * peak;
  int changes = 0, last = 0;
  for (double v : f) {
    if (std::abs(v) < floor) continue;
    const int s = v > 0.0 ? 1 : -1;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

namespace {

// On t = ln r the equation reads f_tt = Q(t) f with
//   Q = m^2 + mu^2 Omega^2 r^4 + 2 mu c r - 2 mu eps r^2.
// Modified Prüfer variables f = R sin(theta), f_t = k R cos(theta) give
//   theta' = k cos^2 - (Q/k) sin^2,  (ln R)' = (k + Q/k) sin cos.
// With k = m_eff the small-r solution f ~ r^m sits at the fixed point
// theta = pi/4, so the start at r = 1e-6 is not stiff.
class Shooter {
 public:
  Shooter(const RadialPotential& pot, int n_r, double r_max, const EigenOptions& opts)
      : pot_(pot), n_r_(n_r), r_max_(r_max), opts_(opts) {
    k_ = std::max(pot.m_eff, 1.0);
    a1_ = 2.0 * pot.mu * pot.coulomb_coeff / (2.0 * pot.m_eff + 1.0);
    t0_ = std::log(opts.r_start);
    t_max_ = std::log(r_max);
    t_match_ = std::log(matching_radius(pot.oscillator_energy(n_r)));
  }

  double q(double t, double eps) const {
    const double r = std::exp(t);
    const double r2 = r * r;
    const double mu = pot_.mu, w = pot_.omega_eff;
    return pot_.m_eff * pot_.m_eff + mu * mu * w * w * r2 * r2 + 2.0 * mu * pot_.coulomb_coeff * r -
           2.0 * mu * eps * r2;
  }

  // theta_out(t_m) - theta_in(t_m) - n_r pi; increasing in eps.
  double mismatch(double eps) const {
    const auto out = integrate(start_outward(eps), t0_, t_match_, eps);
    const auto in = integrate(start_inward(eps), t_max_, t_match_, eps);
    return out[0] - in[0] - n_r_ * std::numbers::pi;
  }

  std::array<double, 2> start_outward(double eps) const {
    (void)eps;
    const double r0 = opts_.r_start, m = pot_.m_eff;
    const double f = 1.0 + a1_ * r0;                 // f / r0^m
    const double ft = m + (m + 1.0) * a1_ * r0;      // f_t / r0^m
    return {std::atan2(k_ * f, ft), m * t0_ + std::log(std::hypot(f, ft / k_))};
  }

  // Large-r asymptote f ~ r^{eps/Omega - 1} exp(-mu Omega r^2/2)(1 + c/(Omega r)).
  std::array<double, 2> start_inward(double eps) const {
    const double r = r_max_, w = pot_.omega_eff;
    const double slope = (eps / w - 1.0) - pot_.mu * w * r * r - pot_.coulomb_coeff / (w * r);
    return {std::atan2(k_, slope), std::log(std::hypot(1.0, slope / k_))};
  }

  std::array<double, 2> integrate(std::array<double, 2> y, double from, double to, double eps) const {
    if (from == to) return y;
    auto rhs = [this, eps](const std::array<double, 2>& s, std::array<double, 2>& d, double t) {
      const double qq = q(t, eps);
      const double sn = std::sin(s[0]), cs = std::cos(s[0]);
      d[0] = k_ * cs * cs - (qq / k_) * sn * sn;
      d[1] = (k_ + qq / k_) * sn * cs;
    };
    auto stepper = odeint::make_controlled(opts_.ode_tol, opts_.ode_tol,
                                           odeint::runge_kutta_dopri5<std::array<double, 2>>());
    const double dt = (to > from ? 1.0 : -1.0) * 1e-3;
    odeint::integrate_adaptive(stepper, rhs, y, from, to, dt);
    return y;
  }

  double t_start() const { return t0_; }
  double t_max() const { return t_max_; }
  double t_match() const { return t_match_; }
  double a1() const { return a1_; }

 private:
  // Outer classical turning point of the oscillator guess, clamped inside the box.
  double matching_radius(double eps) const {
    const double hi = 0.9 * r_max_;
    auto qr = [&](double r) { return q(std::log(r), eps); };
    const int samples = 400;
    double prev_r = hi;
    if (qr(hi) <= 0.0) return hi;
    for (int i = 1; i <= samples; ++i) {
      const double r = hi * (1.0 - static_cast<double>(i) / samples);
      if (r <= opts_.r_start) break;
      if (qr(r) <= 0.0) {
        return find_root_bracketed(qr, r, prev_r, 1e-10 * r_max_);
      }
      prev_r = r;
    }
    return 0.5 * r_max_;
  }

  RadialPotential pot_;
  int n_r_;
  double r_max_;
  EigenOptions opts_;
  double k_ = 1.0, a1_ = 0.0, t0_ = 0.0, t_max_ = 0.0, t_match_ = 0.0;
};

double find_energy(const Shooter& sh, const RadialPotential& pot, int n_r, const EigenOptions& opts) {
  const double w = pot.omega_eff;
  const double guess = pot.oscillator_energy(n_r);
  double lo = guess - w, f_lo = sh.mismatch(lo);
  for (int i = 0; f_lo >= 0.0; ++i) {
    if (i > 60) throw SolverError("radial eigensolver: no lower energy bracket");
    lo -= w * std::ldexp(1.0, i);
    f_lo = sh.mismatch(lo);
  }
  double hi = guess + w, f_hi = sh.mismatch(hi);
  for (int i = 0; f_hi <= 0.0; ++i) {
    if (i > 60) throw SolverError("radial eigensolver: no upper energy bracket");
    lo = hi;
    hi += w * std::ldexp(1.0, i);
    f_hi = sh.mismatch(hi);
  }
  try {
    return find_root_bracketed([&](double e) { return sh.mismatch(e); }, lo, hi, opts.energy_tol);
  } catch (const NumericalError& e) {
    throw SolverError(std::string("radial eigensolver: ") + e.what());
  }
}

std::vector<double> assemble(const Shooter& sh, const RadialPotential& pot, int n_r, double eps,
                             const RadialGrid& grid) {
  const auto nodes = grid.nodes();
  const std::size_t n = nodes.size();
  std::vector<double> log_abs(n, -INFINITY);
  std::vector<int> sign(n, 0);

  const double t_m = sh.t_match();
  const double m = pot.m_eff;

  // Outward through the nodes up to the matching point.
  auto y = sh.start_outward(eps);
  double t = sh.t_start();
  std::size_t i = 0;
  for (; i < n && std::log(nodes[i]) <= t_m; ++i) {
    const double ti = std::log(nodes[i]);
    if (ti <= sh.t_start()) {
      const double v = 1.0 + sh.a1() * nodes[i];
      log_abs[i] = m * ti + std::log(std::abs(v));
      sign[i] = v > 0 ? 1 : -1;
      continue;
    }
    y = sh.integrate(y, t, ti, eps);
    t = ti;
    const double s = std::sin(y[0]);
    log_abs[i] = y[1] + std::log(std::abs(s));
    sign[i] = s > 0 ? 1 : (s < 0 ? -1 : 0);
  }
  const auto out_m = sh.integrate(y, t, t_m, eps);
  const std::size_t first_inner = i;

  // Inward from r_max down to the matching point, scaled to join continuously.
  auto z = sh.start_inward(eps);
  double tz = sh.t_max();
  std::vector<std::array<double, 2>> inward(n - first_inner);
  for (std::size_t j = n; j-- > first_inner;) {
    const double tj = std::min(std::log(nodes[j]), sh.t_max());
    z = sh.integrate(z, tz, tj, eps);
    tz = tj;
    inward[j - first_inner] = z;
  }
  const auto in_m = sh.integrate(z, tz, t_m, eps);
  const double log_scale = out_m[1] - in_m[1];
  const int parity = (n_r % 2) ? -1 : 1;
  for (std::size_t j = first_inner; j < n; ++j) {
    const auto& s = inward[j - first_inner];
    const double sn = std::sin(s[0]);
    log_abs[j] = s[1] + std::log(std::abs(sn)) + log_scale;
    sign[j] = parity * (sn > 0 ? 1 : (sn < 0 ? -1 : 0));
  }

  const double peak = *std::max_element(log_abs.begin(), log_abs.end());
  std::vector<double> f(n);
  for (std::size_t j = 0; j < n; ++j) f[j] = sign[j] * std::exp(log_abs[j] - peak);
  return f;
}

}  // namespace

double solve_radial_energy(const RadialPotential& pot, int n_r, double r_max, const EigenOptions& opts) {
  pot.validate();
  if (n_r < 0) throw DomainError("solve_radial_energy: n_r must be non-negative");
  if (!(r_max > opts.r_start)) throw InputError("solve_radial_energy: r_max too small");
  const Shooter sh(pot, n_r, r_max, opts);
  return find_energy(sh, pot, n_r, opts);
}

RadialSolution solve_radial_eigen(const RadialPotential& pot, int n_r, const RadialGrid& grid,
                                  const EigenOptions& opts) {
  pot.validate();
  if (n_r < 0) throw DomainError("solve_radial_eigen: n_r must be non-negative");
  if (grid.size() == 0) throw InputError("solve_radial_eigen: empty grid");

  RadialGrid g = grid;
  for (int attempt = 0;; ++attempt) {
    const Shooter sh(pot, n_r, g.r_max(), opts);
    const double eps = find_energy(sh, pot, n_r, opts);
    auto f = assemble(sh, pot, n_r, eps, g);

    std::vector<double> dens(f.size());
    const auto r = g.nodes();
    for (std::size_t i = 0; i < f.size(); ++i) dens[i] = f[i] * f[i] * r[i];
    const double norm = std::sqrt(2.0 * std::numbers::pi * integrate_radial(dens, g));
    // Positive near the origin.
    const double first = *std::find_if(f.begin(), f.end(), [](double v) { return v != 0.0; });
    const double scale = (first < 0 ? -1.0 : 1.0) / norm;
    double peak = 0.0;
    for (auto& v : f) {
      v *= scale;
      peak = std::max(peak, std::abs(v));
    }

    const int nodes = count_sign_changes(f);
    if (nodes != n_r)
      throw SolverError("radial eigensolver: expected " + std::to_string(n_r) + " nodes, found " +
                        std::to_string(nodes));

    if (std::abs(f.back()) > opts.tail_tol * peak && attempt < opts.max_extensions) {
      g = RadialGrid::composite(1.25 * g.r_max(), g.panels(), g.order());
      continue;
    }
    return {eps, std::move(g), std::move(f)};
  }
}

}  // namespace magmetric::numerics
