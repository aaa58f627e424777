#include "magmetric/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "magmetric/errors.hpp"
#include "magmetric/numerics/roots.hpp"

namespace magmetric::metrics {

using numerics::RadialGrid;

std::string to_string(ShellKind k) {
  switch (k) {
    case ShellKind::Wavefunction: return "wavefunction";
    case ShellKind::Density: return "density";
    case ShellKind::Current: return "current";
  }
  return "?";
}

ShellGeometry shell_geometry(ShellKind kind, double conserved) {
  if (!(conserved >= 0.0)) throw DomainError("shell_geometry: conserved value must be non-negative");
  const double radius = kind == ShellKind::Wavefunction ? std::sqrt(conserved) : conserved;
  const double diameter = kind == ShellKind::Wavefunction ? std::sqrt(2.0 * conserved) : 2.0 * conserved;
  return {kind, conserved, radius, diameter};
}

double wavefunction_distance(const models::TwoElectronState& s1, const models::TwoElectronState& s2) {
  // 2N (1 - |<psi1|psi2>|) with N = 2; the deficit avoids cancellation.
  const auto o = observables::overlap_detail(s1, s2);
  return std::sqrt(4.0 * std::max(o.deficit, 0.0));
}

double modulus_distance(const models::TwoElectronState& s1, const models::TwoElectronState& s2) {
  const auto o = observables::modulus_overlap_detail(s1, s2);
  return std::sqrt(4.0 * std::max(o.deficit, 0.0));
}

double radial_l1(const RadialGrid& g1, std::span<const double> f1, const RadialGrid& g2, std::span<const double> f2,
                 int power) {
  if (f1.size() != g1.size() || f2.size() != g2.size()) throw InputError("radial_l1: values do not match their grids");
  if (power < 0) throw InputError("radial_l1: power must be non-negative");
  const RadialGrid merged = RadialGrid::merged(g1, g2);
  const auto diff = [&](double r) { return g1.interpolate(f1, r) - g2.interpolate(f2, r); };

  // f1 - f2 is a polynomial of degree < order on every merged panel; the
  // weight r^power raises it by `power`.
  const int order = merged.order();
  const auto& rule = numerics::gauss_legendre(order + (power + 1) / 2 + 1);
  const int samples = 2 * order + 1;
  const auto breaks = merged.breakpoints();

  double total = 0.0;
  std::vector<double> cuts;
  for (int p = 0; p < merged.panels(); ++p) {
    const double a = breaks[p], b = breaks[p + 1];
    // Nudge inward so each evaluation uses this panel's interpolants.
    const double eps = 1e-14 * (b - a);
    cuts.assign(1, a);
    double x_prev = a + eps, d_prev = diff(x_prev);
    for (int s = 1; s <= samples; ++s) {
      const double x = s == samples ? b - eps : a + (b - a) * s / samples;
      const double d = diff(x);
      if ((d_prev < 0.0 && d > 0.0) || (d_prev > 0.0 && d < 0.0))
        cuts.push_back(numerics::find_root_bracketed(diff, x_prev, x, 1e-13 * std::max(1.0, b)));
      if (d != 0.0) {
        x_prev = x;
        d_prev = d;
      }
    }
    cuts.push_back(b);
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
      const double lo = cuts[c], hi = cuts[c + 1];
      if (!(hi > lo)) continue;
      const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
      double piece = 0.0;
      for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        const double r = mid + half * rule.nodes[j];
        piece += rule.weights[j] * std::pow(r, power) * diff(r);
      }
      // diff keeps one sign on the piece.
      total += half * std::abs(piece);
    }
  }
  return 2.0 * std::numbers::pi * total;
}

double density_distance(const observables::DensityProfile& p1, const observables::DensityProfile& p2) {
  return radial_l1(p1.grid, p1.rho, p2.grid, p2.rho, 1);
}

double current_distance(const observables::CurrentProfile& c1, const observables::CurrentProfile& c2) {
  return radial_l1(c1.grid, c1.j_phi, c2.grid, c2.j_phi, 2);
}

double tilde_current_distance(const observables::CurrentProfile& c1, const observables::CurrentProfile& c2,
                              const gauge::GaugeFunction& chi_ref1, const gauge::GaugeFunction& chi_ref2) {
  // An allowed chi has grad chi = (2x chi_q, 2y chi_q, chi_z): no azimuthal
  // part, so j~_phi = j_phi.
  for (const auto* chi : {&chi_ref1, &chi_ref2})
    if (!chi->is_allowed && !gauge::chi_is_allowed(*chi))
      throw InputError("tilde_current_distance: gauge '" + chi->label +
                       "' breaks rotational symmetry; radial profiles cannot carry it");
  return current_distance(c1, c2);
}

double tilde_current_distance(const gauge::GaugedCurrent& a, const gauge::GaugedCurrent& b) {
  const auto& g = a.jp.grid;
  gauge::require_same_grid(g, b.jp.grid, "tilde_current_distance");
  const auto ta = gauge::tilde_current(a.jp, a.rho, a.chi_ref);
  const auto tb = gauge::tilde_current(b.jp, b.rho, b.chi_ref);
  double sum = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const gauge::Vec3 r = g.point(i);
    sum += std::abs(r[0] * (ta.c[1][i] - tb.c[1][i]) - r[1] * (ta.c[0][i] - tb.c[0][i]));
  }
  return sum * g.cell();
}

}  // namespace magmetric::metrics
