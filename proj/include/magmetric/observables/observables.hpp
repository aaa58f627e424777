#pragma once

#include <array>
#include <vector>

#include "magmetric/models/models.hpp"
#include "magmetric/numerics/radial_grid.hpp"

namespace magmetric::observables {

/// Radial particle density, normalized to the particle number:
/// 2 pi \int rho r dr = N = 2.
struct DensityProfile {
  numerics::RadialGrid grid;
  std::vector<double> rho;
  double total = 0.0;   // quadrature value of 2 pi \int rho r dr

  double at(double r) const { return grid.interpolate(rho, r); }
};

/// Azimuthal paramagnetic current j_phi(r); 2 pi \int r^2 j_phi dr = m.
struct CurrentProfile {
  numerics::RadialGrid grid;
  std::vector<double> j_phi;
  int m = 0;
  double moment = 0.0;  // quadrature value of 2 pi \int r^2 j_phi dr

  double at(double r) const { return grid.interpolate(j_phi, r); }
};

/// Profile grid wide enough for both the relative orbital and the CM
/// Gaussian: r_max = r_max(f)/2 + 6/sqrt(Omega).
numerics::RadialGrid default_profile_grid(const models::TwoElectronState& state, int panels = 32, int order = 16);

/// rho(s) = 8 Omega \int u f(u)^2 exp(-2 Omega (s - u/2)^2) I0e(2 Omega s u) du,
/// the angular integral done in closed form. Throws AccuracyError if the
/// total misses 2 by more than 1e-5.
DensityProfile density_profile(const models::TwoElectronState& state, const numerics::RadialGrid& grid);
DensityProfile density_profile(const models::TwoElectronState& state);

/// j_phi(s) = 8 Omega m \int f(u)^2 exp(-2 Omega (s - u/2)^2) I1e(2 Omega s u) du.
/// Also spot-checks that the direct planar reduction has no radial
/// component (SymmetryError) and that the moment is m (AccuracyError).
CurrentProfile current_profile(const models::TwoElectronState& state, const numerics::RadialGrid& grid);
CurrentProfile current_profile(const models::TwoElectronState& state);

/// Direct evaluation of the planar reductions at (x, y) with an
/// `angular`-point periodic rule in the relative angle. Slow; used for
/// self-checks and tests.
double density_direct(const models::TwoElectronState& state, double x, double y, int angular = 64);
std::array<double, 2> current_direct(const models::TwoElectronState& state, double x, double y, int angular = 64);

struct Overlap {
  double value = 0.0;     // |<psi1|psi2>|
  double deficit = 1.0;   // 1 - value, computed without cancellation
};

/// |<psi1|psi2>| = (2 sqrt(O1 O2)/(O1 + O2)) |<f1|f2>|, zero when m differs.
/// Relative orbitals on different grids are compared on the union of their
/// panel breakpoints.
Overlap overlap_detail(const models::TwoElectronState& s1, const models::TwoElectronState& s2);
double overlap(const models::TwoElectronState& s1, const models::TwoElectronState& s2);

/// <|psi1|, |psi2|>: the overlap of the moduli, blind to the angular phase
/// e^{i m phi}. Diagnostic only; states of different m need not give 0.
Overlap modulus_overlap_detail(const models::TwoElectronState& s1, const models::TwoElectronState& s2);

}  // namespace magmetric::observables
