#include "magmetric/models/models.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include "magmetric/errors.hpp"
#include "magmetric/numerics/roots.hpp"
#include "magmetric/numerics/special_functions.hpp"

namespace magmetric::models {

namespace {

constexpr double kMu = 0.5;
constexpr int kLowestM = -200;

}  // namespace

std::string_view to_string(System s) { return s == System::Hooke ? "hooke" : "isi"; }

System parse_system(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "hooke") return System::Hooke;
  if (lower == "isi") return System::ISI;
  throw InputError("unknown system '" + std::string(name) + "' (expected hooke or isi)");
}

void SystemFamily::validate() const {
  if (!(omega0 > 0.0) || !std::isfinite(omega0)) throw DomainError("omega0 must be positive");
  if (system == System::ISI && !(alpha > 0.0 && std::isfinite(alpha)))
    throw DomainError("alpha must be positive for the ISI system");
}

ModelSpec ModelSpec::of(const SystemFamily& fam, double omega_c, int m, int n_r) {
  ModelSpec s;
  s.system = fam.system;
  s.omega0 = fam.omega0;
  s.alpha = fam.alpha;
  s.omega_c = omega_c;
  s.m = m;
  s.n_r = n_r;
  return s;
}

void ModelSpec::validate() const {
  family().validate();
  if (!(omega_c >= 0.0) || !std::isfinite(omega_c)) throw DomainError("omega_c must be non-negative");
  if (m > 0) throw DomainError("only m <= 0 is supported");
  if (n_r < 0) throw DomainError("n_r must be non-negative");
}

double effective_frequency(double omega0, double omega_c) {
  return std::sqrt(omega0 * omega0 + 0.25 * omega_c * omega_c);
}

double isi_energy(double omega0, double omega_c, double alpha, int m, int n_r) {
  if (!(alpha > 0.0)) throw DomainError("isi_energy: alpha must be positive");
  const double w = effective_frequency(omega0, omega_c);
  return w * (2.0 * n_r + 2.0 + std::sqrt(static_cast<double>(m) * m + alpha)) + 0.5 * m * omega_c;
}

numerics::RadialPotential relative_potential(const ModelSpec& spec) {
  numerics::RadialPotential p;
  p.mu = kMu;
  p.omega_eff = effective_frequency(spec.omega0, spec.omega_c);
  if (spec.system == System::ISI) {
    p.m_eff = std::sqrt(static_cast<double>(spec.m) * spec.m + spec.alpha);
    p.coulomb_coeff = 0.0;
  } else {
    p.m_eff = std::abs(spec.m);
    p.coulomb_coeff = 1.0;
  }
  return p;
}

TwoElectronState isi_state(const ModelSpec& spec, int panels, int order) {
  if (spec.system != System::ISI) throw InputError("isi_state: spec is not an ISI system");
  spec.validate();
  const auto pot = relative_potential(spec);
  TwoElectronState st;
  st.spec = spec;
  st.omega_eff = pot.omega_eff;
  st.m_eff = pot.m_eff;
  st.energy = isi_energy(spec.omega0, spec.omega_c, spec.alpha, spec.m, spec.n_r);
  st.cm_width = 1.0 / std::sqrt(2.0 * pot.omega_eff);
  st.grid = numerics::default_radial_grid(pot, spec.n_r, panels, order);

  // f = C r^nu L_n^nu(x) e^{-x/2}, x = mu Omega r^2,
  // C^2 = (mu Omega)^{nu+1} n! / (pi Gamma(n + nu + 1)); evaluated in logs.
  const double nu = pot.m_eff, a = kMu * pot.omega_eff;
  const int n = spec.n_r;
  const double log_c = 0.5 * ((nu + 1.0) * std::log(a) + std::lgamma(n + 1.0) - std::log(std::numbers::pi) -
                              std::lgamma(n + nu + 1.0));
  st.rel_radial = st.grid.sample([&](double r) {
    const double x = a * r * r;
    const double lag = numerics::associated_laguerre(n, nu, x);
    if (lag == 0.0) return 0.0;
    const double mag = std::exp(log_c + nu * std::log(r) - 0.5 * x + std::log(std::abs(lag)));
    return lag < 0 ? -mag : mag;
  });
  return st;
}

TwoElectronState hooke_state(const ModelSpec& spec, int panels, int order) {
  if (spec.system != System::Hooke) throw InputError("hooke_state: spec is not a Hooke system");
  spec.validate();
  const auto pot = relative_potential(spec);
  auto sol = numerics::solve_radial_eigen(pot, spec.n_r, numerics::default_radial_grid(pot, spec.n_r, panels, order));
  TwoElectronState st;
  st.spec = spec;
  st.omega_eff = pot.omega_eff;
  st.m_eff = pot.m_eff;
  st.energy = pot.omega_eff + sol.energy + 0.5 * spec.m * spec.omega_c;
  st.cm_width = 1.0 / std::sqrt(2.0 * pot.omega_eff);
  st.grid = std::move(sol.grid);
  st.rel_radial = std::move(sol.f);
  return st;
}

TwoElectronState make_state(const ModelSpec& spec, int panels, int order) {
  return spec.system == System::ISI ? isi_state(spec, panels, order) : hooke_state(spec, panels, order);
}

double total_energy(const SystemFamily& fam, double omega_c, int m, int n_r) {
  const auto spec = ModelSpec::of(fam, omega_c, m, n_r);
  spec.validate();
  if (fam.system == System::ISI) return isi_energy(fam.omega0, omega_c, fam.alpha, m, n_r);
  const auto pot = relative_potential(spec);
  const double eps = numerics::solve_radial_energy(pot, n_r, numerics::default_radial_extent(pot, n_r));
  return pot.omega_eff + eps + 0.5 * m * omega_c;
}

int ground_state_m(const SystemFamily& fam, double omega_c) {
  fam.validate();
  if (!(omega_c >= 0.0)) throw DomainError("ground_state_m: omega_c must be non-negative");
  int m = 0;
  double e = total_energy(fam, omega_c, 0);
  for (;;) {
    if (m - 1 < kLowestM) throw RangeError("ground_state_m: search passed m = -200");
    const double next = total_energy(fam, omega_c, m - 1);
    if (!(next < e)) break;  // ties stay in the band being exited
    e = next;
    --m;
  }
  return m;
}

double transition_frequency(const SystemFamily& fam, int m, double tol) {
  fam.validate();
  if (m >= 0) throw DomainError("transition_frequency: m must be negative");
  auto gap = [&](double wc) { return total_energy(fam, wc, m) - total_energy(fam, wc, m + 1); };
  // gap > 0 at zero field; walk out until the Zeeman term wins.
  double lo = 0.0, hi = std::max(1.0, fam.omega0);
  while (gap(hi) > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e4) throw BracketError("transition_frequency: no crossing below omega_c = 1e4");
  }
  return numerics::find_root_bracketed(gap, lo, hi, tol);
}

double reference_frequency(const SystemFamily& fam, int m_ref) {
  if (m_ref >= 0) throw DomainError("reference_frequency: m_ref must be negative");
  return 0.5 * (transition_frequency(fam, m_ref) + transition_frequency(fam, m_ref - 1));
}

TransitionTable transition_table(const SystemFamily& fam, double wc_min, double wc_max) {
  if (!(wc_max > wc_min)) throw InputError("transition_table: empty frequency window");
  TransitionTable table{fam, {}};
  for (int m = ground_state_m(fam, std::max(wc_min, 0.0)) - 1; m >= kLowestM; --m) {
    const double wt = transition_frequency(fam, m);
    if (wt > wc_max) break;
    if (wt > wc_min) table.rows.push_back({m, wt});
  }
  return table;
}

}  // namespace magmetric::models
