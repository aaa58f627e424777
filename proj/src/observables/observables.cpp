#include "magmetric/observables/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "magmetric/errors.hpp"
#include "magmetric/numerics/special_functions.hpp"

namespace magmetric::observables {

using models::TwoElectronState;
using numerics::RadialGrid;
using std::numbers::pi;

namespace {

// exp(-2 Omega (s - u/2)^2) below this is dropped; the kernel never exceeds 1.
constexpr double kLogCut = -41.44653167389282;  // ln(1e-18)

enum class Kernel { Density, Current };

// 8 Omega \int w(u) f(u)^2 exp(-2 Omega (s - u/2)^2) B(2 Omega s u) du, with
// w = u, B = I0e for the density and w = 1, B = I1e for the current.
std::vector<double> reduce(const TwoElectronState& st, const RadialGrid& grid, Kernel kind) {
  const double w = st.omega_eff;
  const auto un = st.grid.nodes();
  const auto uw = st.grid.weights();
  std::vector<double> f2(un.size());
  for (std::size_t i = 0; i < un.size(); ++i) f2[i] = st.rel_radial[i] * st.rel_radial[i];

  const auto sn = grid.nodes();
  std::vector<double> out(sn.size());
  for (std::size_t k = 0; k < sn.size(); ++k) {
    const double s = sn[k];
    double acc = 0.0;
    for (std::size_t i = 0; i < un.size(); ++i) {
      const double d = s - 0.5 * un[i];
      const double expo = -2.0 * w * d * d;
      if (expo < kLogCut || f2[i] == 0.0) continue;
      const double x = 2.0 * w * s * un[i];
      const double g = std::exp(expo);
      if (kind == Kernel::Density)
        acc += uw[i] * un[i] * f2[i] * g * numerics::bessel_i0e(x);
      else
        acc += uw[i] * f2[i] * g * numerics::bessel_i1e(x);
    }
    out[k] = 8.0 * w * acc;
  }
  return out;
}

double radial_moment(const std::vector<double>& v, const RadialGrid& g, int power) {
  const auto r = g.nodes();
  std::vector<double> t(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) t[i] = 2.0 * pi * std::pow(r[i], power) * v[i];
  return numerics::integrate_radial(t, g);
}

struct Sampled {
  RadialGrid grid;
  std::vector<double> a, b;
};

Sampled on_common_grid(const TwoElectronState& s1, const TwoElectronState& s2) {
  if (s1.grid.same_as(s2.grid)) return {s1.grid, s1.rel_radial, s2.rel_radial};
  Sampled out{RadialGrid::merged(s1.grid, s2.grid), {}, {}};
  out.a = out.grid.sample([&](double r) { return s1.rel_at(r); });
  out.b = out.grid.sample([&](double r) { return s2.rel_at(r); });
  return out;
}

}  // namespace

RadialGrid default_profile_grid(const TwoElectronState& state, int panels, int order) {
  const double r_max = 0.5 * state.grid.r_max() + 6.0 / std::sqrt(state.omega_eff);
  return RadialGrid::composite(r_max, panels, order);
}

DensityProfile density_profile(const TwoElectronState& state, const RadialGrid& grid) {
  DensityProfile p{grid, reduce(state, grid, Kernel::Density), 0.0};
  p.total = radial_moment(p.rho, grid, 1);
  if (std::abs(p.total - 2.0) > 1e-5)
    throw AccuracyError("density_profile: particle number " + std::to_string(p.total) + " instead of 2");
  return p;
}

DensityProfile density_profile(const TwoElectronState& state) {
  return density_profile(state, default_profile_grid(state));
}

CurrentProfile current_profile(const TwoElectronState& state, const RadialGrid& grid) {
  CurrentProfile c;
  c.grid = grid;
  c.m = state.spec.m;
  if (c.m == 0) {
    c.j_phi.assign(grid.size(), 0.0);
    return c;
  }
  c.j_phi = reduce(state, grid, Kernel::Current);
  for (auto& v : c.j_phi) v *= c.m;
  c.moment = radial_moment(c.j_phi, grid, 2);
  if (std::abs(c.moment - c.m) > 1e-5)
    throw AccuracyError("current_profile: moment " + std::to_string(c.moment) + " instead of " + std::to_string(c.m));

  // The planar reduction must be purely azimuthal.
  double peak = 0.0;
  for (double v : c.j_phi) peak = std::max(peak, std::abs(v));
  const auto nodes = grid.nodes();
  const double probe = nodes[std::distance(c.j_phi.begin(),
                                           std::max_element(c.j_phi.begin(), c.j_phi.end(),
                                                            [](double a, double b) { return std::abs(a) < std::abs(b); }))];
  for (double angle : {0.3, 2.2}) {
    const double x = probe * std::cos(angle), y = probe * std::sin(angle);
    const auto j = current_direct(state, x, y);
    const double radial = (x * j[0] + y * j[1]) / probe;
    if (std::abs(radial) > 1e-8 * peak)
      throw SymmetryError("current_profile: radial current component " + std::to_string(radial));
  }
  return c;
}

CurrentProfile current_profile(const TwoElectronState& state) {
  return current_profile(state, default_profile_grid(state));
}

namespace {

// Integrand loop shared by the direct reductions: calls fn(weight, ux, uy)
// with weight = 2 |phi_CM(s - u/2)|^2 f(u)^2 u du dphi.
template <class Fn>
void direct_sum(const TwoElectronState& st, double x, double y, int angular, Fn&& fn) {
  if (angular < 8) throw InputError("direct reduction needs at least 8 angular points");
  const double w = st.omega_eff;
  const auto un = st.grid.nodes();
  const auto uw = st.grid.weights();
  const double dphi = 2.0 * pi / angular;
  for (std::size_t i = 0; i < un.size(); ++i) {
    const double u = un[i];
    const double f2 = st.rel_radial[i] * st.rel_radial[i];
    for (int k = 0; k < angular; ++k) {
      const double phi = k * dphi;
      const double ux = u * std::cos(phi), uy = u * std::sin(phi);
      const double rx = x - 0.5 * ux, ry = y - 0.5 * uy;
      const double cm = (2.0 * w / pi) * std::exp(-2.0 * w * (rx * rx + ry * ry));
      fn(2.0 * cm * f2 * u * uw[i] * dphi, ux, uy);
    }
  }
}

}  // namespace

double density_direct(const TwoElectronState& state, double x, double y, int angular) {
  // f carries the full planar normalization, so |chi(u)|^2 = f(u)^2.
  double acc = 0.0;
  direct_sum(state, x, y, angular, [&](double wt, double, double) { acc += wt; });
  return acc;
}

std::array<double, 2> current_direct(const TwoElectronState& state, double x, double y, int angular) {
  // Relative current f^2 (m / u^2) (z x u).
  std::array<double, 2> j{0.0, 0.0};
  const double m = state.spec.m;
  direct_sum(state, x, y, angular, [&](double wt, double ux, double uy) {
    const double u2 = ux * ux + uy * uy;
    j[0] += wt * m * (-uy) / u2;
    j[1] += wt * m * ux / u2;
  });
  return j;
}

namespace {

Overlap overlap_impl(const TwoElectronState& s1, const TwoElectronState& s2, bool modulus) {
  if (s1.spec.system != s2.spec.system) throw InputError("overlap: states belong to different systems");
  if (!modulus && s1.spec.m != s2.spec.m) return {0.0, 1.0};

  const double o1 = s1.omega_eff, o2 = s2.omega_eff;
  const double g_cm = 2.0 * std::sqrt(o1 * o2) / (o1 + o2);
  const double dq = std::sqrt(o1) - std::sqrt(o2);
  const double cm_deficit = dq * dq / (o1 + o2);

  auto c = on_common_grid(s1, s2);
  if (modulus) {
    for (auto& v : c.a) v = std::abs(v);
    for (auto& v : c.b) v = std::abs(v);
  }
  const double n1 = std::sqrt(radial_moment([&] {
    std::vector<double> t(c.a.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = c.a[i] * c.a[i];
    return t;
  }(), c.grid, 1));
  const double n2 = std::sqrt(radial_moment([&] {
    std::vector<double> t(c.b.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = c.b[i] * c.b[i];
    return t;
  }(), c.grid, 1));
  std::vector<double> prod(c.a.size());
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = c.a[i] * c.b[i];
  const double sgn = radial_moment(prod, c.grid, 1) < 0.0 ? -1.0 : 1.0;
  // 1 - |<f1|f2>| = (1/2) || f1/|f1| - sgn f2/|f2| ||^2, exact zero for equal inputs.
  std::vector<double> diff(c.a.size());
  for (std::size_t i = 0; i < diff.size(); ++i) {
    const double d = c.a[i] / n1 - sgn * c.b[i] / n2;
    diff[i] = d * d;
  }
  const double rel_deficit = std::clamp(0.5 * radial_moment(diff, c.grid, 1), 0.0, 1.0);

  Overlap out;
  out.deficit = std::clamp(cm_deficit + g_cm * rel_deficit, 0.0, 1.0);
  out.value = g_cm * (1.0 - rel_deficit);
  return out;
}

}  // namespace

Overlap overlap_detail(const TwoElectronState& s1, const TwoElectronState& s2) { return overlap_impl(s1, s2, false); }

Overlap modulus_overlap_detail(const TwoElectronState& s1, const TwoElectronState& s2) {
  return overlap_impl(s1, s2, true);
}

double overlap(const TwoElectronState& s1, const TwoElectronState& s2) { return overlap_detail(s1, s2).value; }

}  // namespace magmetric::observables
