#pragma once

#include <functional>
#include <string>
#include <vector>

#include "magmetric/gauge/fields.hpp"
#include "magmetric/gauge/profiles.hpp"

namespace magmetric::gauge {

/// Finite-difference check of [H, L_z] psi for H = 1/2 (-i grad + A)^2 + V,
/// L_z = -i (x d_y - y d_x). V must commute with L_z (function of x^2 + y^2
/// and z). A and V are callbacks so stencils can reach off-grid points.
struct CommutatorProblem {
  int dim = 3;
  double half_width = 2.625;
  std::function<Vec3(const Vec3&)> A;
  std::function<double(const Vec3&)> V;
  std::function<cplx(const Vec3&)> psi;
  std::string label;
};

struct CommutatorLevel {
  int n;
  double h;
  double residual;   // ||[H, L_z] psi|| / ||psi|| on this grid
};

struct CommutatorReport {
  std::string label;
  int order = 0;
  std::vector<CommutatorLevel> levels;  // coarse to fine
  double extrapolated = 0.0;   // h -> 0 limit from the levels

  /// Plain-text table: label, stencil order, one row per grid, limit.
  std::string to_text() const;
};

/// Centred-difference coefficients of even `order` (2..64): first
/// derivative d_k and second derivative c_k for k = 0..order/2, in units of
/// 1/h and 1/h^2. The pair satisfies k c_k = 2 d_k, so the discrete Laplacian
/// commutes exactly with the discrete L_z.
/// order == kSpectral selects the infinite-order limit (sinc differentiation)
/// spanning an n-point grid.
inline constexpr int kSpectral = 0;
struct Stencil {
  int order;
  std::vector<double> d1, d2;
};
Stencil centred_stencil(int order, int n = 0);

/// Residual on one n^dim grid. Throws DomainError if psi has not decayed
/// where the stencil meets the boundary.
double commutator_residual(const CommutatorProblem& prob, int n, int order = kSpectral);

/// Residuals on the given grids plus the h -> 0 limit: Richardson with
/// exponents order, order + 2, ... for finite stencils, an exp(-c/h^2) fit
/// through the last three grids for the spectral one.
CommutatorReport commutator_study(const CommutatorProblem& prob, const std::vector<int>& ns,
                                  int order = kSpectral);

/// Test problems on a Gaussian-times-polynomial psi of the given width with
/// no rotational symmetry, in the trap V = |r|^2/2. The box is 7.5 widths.
CommutatorProblem nice_gauge_problem(const GaugeProfiles& profiles, int dim = 3, double width = 0.35);
CommutatorProblem landau_problem(double b, int dim = 3, double width = 0.35);

}  // namespace magmetric::gauge
