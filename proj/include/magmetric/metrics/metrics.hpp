#pragma once

#include <span>
#include <string>

#include "magmetric/gauge/gauge.hpp"
#include "magmetric/models/models.hpp"
#include "magmetric/numerics/radial_grid.hpp"
#include "magmetric/observables/observables.hpp"

namespace magmetric::metrics {

enum class ShellKind { Wavefunction, Density, Current };
std::string to_string(ShellKind k);

/// Sphere on which all states with a given conserved value c lie:
/// radius c^{1/p} (p = 2 for wavefunctions, 1 otherwise) and the largest
/// distance between two of its points.
struct ShellGeometry {
  ShellKind kind;
  double conserved;
  double radius;
  double diameter;
};

/// Throws DomainError for conserved < 0.
ShellGeometry shell_geometry(ShellKind kind, double conserved);

/// D_psi = sqrt(2N - 2N |<psi1|psi2>|) with N = 2, minimized over the global
/// phase; 2 for states of different m.
double wavefunction_distance(const models::TwoElectronState& s1, const models::TwoElectronState& s2);

/// Same formula on the moduli |psi1|, |psi2|. A diagnostic, not one of the
/// metrics: it ignores the e^{i m phi} factor, so different m do not
/// saturate at 2.
double modulus_distance(const models::TwoElectronState& s1, const models::TwoElectronState& s2);

/// D_rho = 2 pi \int |rho1 - rho2| r dr, in [0, 4].
double density_distance(const observables::DensityProfile& p1, const observables::DensityProfile& p2);

/// D_jp = 2 pi \int r^2 |j1 - j2| dr, in [0, |m1| + |m2|].
double current_distance(const observables::CurrentProfile& c1, const observables::CurrentProfile& c2);

/// Distance between the gauge-invariant currents j~ = j_p - rho grad chi_ref.
/// Radial profiles can only carry allowed gauges, for which the azimuthal
/// part of j~ equals j_phi; a disallowed chi throws InputError (use the
/// field overload).
double tilde_current_distance(const observables::CurrentProfile& c1, const observables::CurrentProfile& c2,
                              const gauge::GaugeFunction& chi_ref1, const gauge::GaugeFunction& chi_ref2);

/// \int |[r x (j~1 - j~2)]_z| dV on the shared Cartesian grid. Only the
/// in-plane components enter.
double tilde_current_distance(const gauge::GaugedCurrent& a, const gauge::GaugedCurrent& b);

/// 2 pi \int r^power |f1 - f2| dr for two panel-polynomial functions on
/// (possibly different) radial grids. Each panel of the merged grid is split
/// at the sign changes of f1 - f2 before Gauss-Legendre quadrature, so the
/// kinks of |f1 - f2| do not cost accuracy.
double radial_l1(const numerics::RadialGrid& g1, std::span<const double> f1, const numerics::RadialGrid& g2,
                 std::span<const double> f2, int power);

}  // namespace magmetric::metrics
