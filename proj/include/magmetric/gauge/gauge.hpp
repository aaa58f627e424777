#pragma once

#include <functional>
#include <string>

#include "magmetric/gauge/fields.hpp"
#include "magmetric/gauge/profiles.hpp"
#include "magmetric/models/models.hpp"
#include "magmetric/observables/observables.hpp"

namespace magmetric::gauge {

/// Gauge function chi with its analytic gradient. The transformation is
/// A' = A - grad chi, psi' = e^{i chi} psi, j_p' = j_p + rho grad chi.
struct GaugeFunction {
  std::function<double(const Vec3&)> chi;
  std::function<Vec3(const Vec3&)> grad;
  bool is_allowed = false;   // chi depends on (x^2 + y^2, z) only
  std::string label;

  static GaugeFunction zero();
  /// chi = P(x^2 + y^2, z); always allowed.
  static GaugeFunction from_profile(const Profile& p);
  /// chi = c0 + cx x + cy y; allowed only when cx = cy = 0.
  static GaugeFunction linear(double c0, double cx, double cy);
};

/// True iff chi is invariant under in-plane rotation at a fixed set of
/// pseudo-random points: |chi(R r) - chi(r)| <= 1e-12 max(1, |chi(r)|) for
/// quarter turns and generic angles.
bool chi_is_allowed(const GaugeFunction& chi);

/// Fields of one gauge representative. `psi` may be empty: a two-electron
/// state has no single-particle wavefunction on the grid, only rho and j_p.
struct FieldSet {
  ComplexField psi;
  ScalarField rho;
  VectorField jp;
};

/// psi' = e^{i chi} psi, j_p' = j_p + rho grad chi (analytic gradient).
FieldSet apply_gauge(const FieldSet& in, const GaugeFunction& chi);

/// j~ = j_p - rho grad chi_ref, where A = A_ref - grad chi_ref.
VectorField tilde_current(const VectorField& jp, const ScalarField& rho, const GaugeFunction& chi_ref);

/// \int [r x j]_z over the grid. Throws DomainError if |j| on the boundary
/// exceeds 1e-12 of its maximum (the field has not decayed).
double angular_moment(const VectorField& jp);
/// 2 pi \int r^2 j_phi dr.
double angular_moment(const observables::CurrentProfile& c);

/// rho and planar j_p of a model state sampled on a 2D grid (symmetric gauge).
FieldSet model_state_fields(const observables::DensityProfile& rho, const observables::CurrentProfile& jp,
                            const CartesianGrid& grid);

/// Single-particle rho = |psi|^2 and j_p = Im(psi* grad psi) from analytic
/// callbacks, for gauge checks that need a non-radial density.
FieldSet wavefunction_fields(const CartesianGrid& grid, const std::function<cplx(const Vec3&)>& psi,
                             const std::function<std::array<cplx, 3>(const Vec3&)>& grad_psi);

/// A current together with the gauge it is expressed in, relative to the
/// reference (symmetric) gauge: A = A_ref - grad chi_ref.
struct GaugedCurrent {
  ScalarField rho;
  VectorField jp;
  GaugeFunction chi_ref = GaugeFunction::zero();
};

}  // namespace magmetric::gauge
