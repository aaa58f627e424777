#pragma once

#include <vector>

#include "magmetric/numerics/radial_grid.hpp"

namespace magmetric::numerics {

/// Relative-motion radial problem
///   -(1/2mu)[f'' + f'/r - m_eff^2 f/r^2] + (mu/2) Omega^2 r^2 f + c f/r = eps f.
struct RadialPotential {
  double m_eff = 0.0;
  double mu = 0.5;
  double omega_eff = 1.0;
  double coulomb_coeff = 0.0;

  void validate() const;
  /// Eigenvalue of the c = 0 problem, Omega (2 n_r + 1 + m_eff).
  double oscillator_energy(int n_r) const;
};

struct EigenOptions {
  double energy_tol = 1e-12;
  double ode_tol = 1e-13;
  double r_start = 1e-6;
  double tail_tol = 1e-7;
  int max_extensions = 4;
};

struct RadialSolution {
  double energy = 0.0;
  RadialGrid grid;          // may be wider than the requested grid after tail extension
  std::vector<double> f;    // 2 pi \int f^2 r dr = 1, positive near the origin
};

/// Default grid for the n_r-th state: r_max = 6 sqrt((2 n_r + m_eff + 1)/(mu Omega)).
RadialGrid default_radial_grid(const RadialPotential& pot, int n_r, int panels = 32, int order = 16);

/// Shooting solver in the Prüfer form on t = ln r.
///
/// Throws SolverError when no bracket is found or the converged function has
/// the wrong number of nodes.
RadialSolution solve_radial_eigen(const RadialPotential& pot, int n_r, const RadialGrid& grid,
                                  const EigenOptions& opts = {});

/// Eigenvalue only, with the inward integration started at r_max. Skips the
/// eigenfunction assembly, which roughly halves the cost of energy scans.
double solve_radial_energy(const RadialPotential& pot, int n_r, double r_max, const EigenOptions& opts = {});

/// r_max used by default_radial_grid.
double default_radial_extent(const RadialPotential& pot, int n_r);

/// Interior sign changes, ignoring samples below 1e-10 of the maximum.
int count_sign_changes(const std::vector<double>& f);

}  // namespace magmetric::numerics
