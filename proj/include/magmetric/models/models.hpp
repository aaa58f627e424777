#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "magmetric/numerics/radial_eigen.hpp"
#include "magmetric/numerics/radial_grid.hpp"

namespace magmetric::models {

enum class System { Hooke, ISI };

std::string_view to_string(System s);
/// Accepts "hooke" / "isi" (case-insensitive).
System parse_system(std::string_view name);

/// Two electrons in a 2D harmonic trap plus uniform field, symmetric gauge,
/// atomic units. The Zeeman term is (omega_c/2) L_z, so m < 0 lowers the energy.
struct SystemFamily {
  System system = System::ISI;
  double omega0 = 0.6;
  double alpha = 5.0;  // inverse-square strength; ignored for Hooke

  void validate() const;
};

struct ModelSpec {
  System system = System::ISI;
  double omega0 = 0.6;
  double omega_c = 0.0;
  double alpha = 5.0;
  int m = 0;    // relative angular momentum, <= 0
  int n_r = 0;
  static constexpr int M = 0;  // centre-of-mass angular momentum
  static constexpr int N = 2;

  static ModelSpec of(const SystemFamily& fam, double omega_c, int m, int n_r = 0);
  SystemFamily family() const { return {system, omega0, alpha}; }
  void validate() const;
};

/// CM Gaussian (mass 2, frequency Omega, n = M = 0) times the relative
/// orbital f(u) e^{i m phi}. f is normalized so that 2 pi \int f^2 u du = 1,
/// which makes the whole state unit-normalized.
struct TwoElectronState {
  ModelSpec spec;
  double omega_eff = 0.0;
  double energy = 0.0;
  double cm_width = 0.0;   // 1/sqrt(2 Omega): |phi_CM(R)|^2 = (2 Omega/pi) exp(-R^2/cm_width^2)
  double m_eff = 0.0;      // centrifugal index of f: sqrt(m^2 + alpha) for ISI, |m| for Hooke
  double phase = 0.0;      // global phase e^{i phase}; never changes any observable
  numerics::RadialGrid grid;
  std::vector<double> rel_radial;

  /// f(u) by panel interpolation, zero beyond the grid.
  double rel_at(double u) const { return grid.interpolate(rel_radial, u); }
};

double effective_frequency(double omega0, double omega_c);

/// Closed-form ISI energy Omega (2 n_r + 2 + sqrt(m^2 + alpha)) + m omega_c / 2.
double isi_energy(double omega0, double omega_c, double alpha, int m, int n_r = 0);

/// Relative-motion potential of a spec (mu = 1/2).
numerics::RadialPotential relative_potential(const ModelSpec& spec);

TwoElectronState isi_state(const ModelSpec& spec, int panels = 32, int order = 16);
TwoElectronState hooke_state(const ModelSpec& spec, int panels = 32, int order = 16);
/// Dispatches on spec.system.
TwoElectronState make_state(const ModelSpec& spec, int panels = 32, int order = 16);

/// Total energy Omega + eps_rel + m omega_c / 2 (closed form for ISI, shooting for Hooke).
double total_energy(const SystemFamily& fam, double omega_c, int m, int n_r = 0);

/// argmin over m = 0, -1, -2, ... of the n_r = 0 energy. Ties go to the
/// smaller |m|. Throws RangeError past m = -200.
int ground_state_m(const SystemFamily& fam, double omega_c);

/// omega_c at which E(m) = E(m + 1), i.e. where band m becomes the ground
/// state as the field grows. Throws BracketError if none below omega_c = 1e4.
double transition_frequency(const SystemFamily& fam, int m, double tol = 1e-10);

/// Midpoint of the transitions into and out of band m_ref.
double reference_frequency(const SystemFamily& fam, int m_ref);

struct TransitionRow {
  int m;           // band entered
  double omega_t;
};

struct TransitionTable {
  SystemFamily family;
  std::vector<TransitionRow> rows;   // omega_t increasing, m decreasing
};

/// All crossings with omega_t in (wc_min, wc_max].
TransitionTable transition_table(const SystemFamily& fam, double wc_min, double wc_max);

}  // namespace magmetric::models
