#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "magmetric/errors.hpp"
#include "magmetric/models/models.hpp"
#include "oracles/fd_radial.hpp"
#include "oracles/magnetic_fd.hpp"

using namespace magmetric;
using namespace magmetric::models;
using std::numbers::pi;

namespace {

const SystemFamily kIsi{System::ISI, 0.6, 5.0};
const SystemFamily kHooke{System::Hooke, 0.5, 0.0};

double norm_of(const TwoElectronState& s) {
  const auto r = s.grid.nodes();
  std::vector<double> d(r.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = 2.0 * pi * s.rel_radial[i] * s.rel_radial[i] * r[i];
  return numerics::integrate_radial(d, s.grid);
}

double closed_form_transition(double omega0, double alpha, int m) {
  const double d = std::sqrt(m * m + alpha) - std::sqrt((std::abs(m) - 1.0) * (std::abs(m) - 1.0) + alpha);
  return 2.0 * omega0 * d / std::sqrt(1.0 - d * d);
}

}  // namespace

TEST_CASE("effective_frequency") {
  CHECK(effective_frequency(0.6, 0.0) == 0.6);
  CHECK(effective_frequency(0.6, 5.36) == doctest::Approx(2.74634302).epsilon(1e-8));
  // sqrt(0.25 + 5.238^2 / 4) = sqrt(7.109161)
  CHECK(effective_frequency(0.5, 5.238) == doctest::Approx(2.6663010).epsilon(1e-7));
}

TEST_CASE("non-interacting limit is separable: single-particle FD spectrum sums to the closed form") {
  // Lanczos on the one-electron magnetic Hamiltonian; frozen results
  // (omega0 = 1, omega_c = 1): 1.11803979, 1.73609006 against Omega = 1.11803399.
  const double w0 = 1.0, wc = 1.0;
  const auto levels = oracle::magnetic_fd_levels_extrapolated(w0, wc, 5.0, 40, 2);
  const double omega = effective_frequency(w0, wc);
  CHECK(std::abs(levels[0] / omega - 1.0) < 1e-4);
  // Both electrons in the lowest orbital: CM ground + relative m = 0.
  const double two_body = 2.0 * levels[0];
  CHECK(std::abs(two_body / isi_energy(w0, wc, 1e-14, 0, 0) - 1.0) < 1e-3);
  // One electron promoted to the m = -1 orbital: relative m = -1 state.
  CHECK(std::abs((levels[0] + levels[1]) / isi_energy(w0, wc, 1e-14, -1, 0) - 1.0) < 1e-3);
}

TEST_CASE("isi_energy closed form") {
  CHECK(isi_energy(0.6, 0.0, 1e-24, 0, 0) == doctest::Approx(1.2).epsilon(1e-12));
  const double w = effective_frequency(0.6, 5.36);
  CHECK(isi_energy(0.6, 5.36, 5.0, -10, 0) == doctest::Approx(w * (2.0 + std::sqrt(105.0)) - 26.8).epsilon(1e-14));
  CHECK(isi_energy(0.6, 5.36, 5.0, -10, 0) == doctest::Approx(6.834).epsilon(1e-3));
  CHECK_THROWS_AS(isi_energy(0.6, 1.0, 0.0, -1, 0), DomainError);
}

TEST_CASE("ISI closed form agrees with the shooting solver on random parameters") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> w0(0.05, 1.5), wc(0.0, 9.0), al(0.1, 12.0);
  std::uniform_int_distribution<int> mm(-15, 0), nr(0, 2);
  for (int i = 0; i < 50; ++i) {
    const auto spec = ModelSpec::of({System::ISI, w0(rng), al(rng)}, wc(rng), mm(rng), nr(rng));
    const auto pot = relative_potential(spec);
    const auto sol = numerics::solve_radial_eigen(pot, spec.n_r, numerics::default_radial_grid(pot, spec.n_r));
    const double numeric = pot.omega_eff + sol.energy + 0.5 * spec.m * spec.omega_c;
    const double exact = isi_energy(spec.omega0, spec.omega_c, spec.alpha, spec.m, spec.n_r);
    CHECK(std::abs(numeric / exact - 1.0) < 1e-8);
  }
}

TEST_CASE("ISI closed form against the finite-difference oracle") {
  const auto spec = ModelSpec::of(kIsi, 5.0, -10);
  const auto pot = relative_potential(spec);
  const double fd = oracle::fd_radial_extrapolated(pot.m_eff, 0.5, pot.omega_eff, 0.0, 0, 12.0);
  const double rel = isi_energy(0.6, 5.0, 5.0, -10, 0) - pot.omega_eff - 0.5 * -10 * 5.0;
  CHECK(std::abs(fd / rel - 1.0) < 1e-8);
}

TEST_CASE("isi_state is normalized and matches the shooting eigenfunction") {
  {
    const auto s = isi_state(ModelSpec::of({System::ISI, 0.6, 1e-24}, 0.0, 0));
    // Oscillator limit: f proportional to exp(-Omega r^2 / 4).
    const double c = std::sqrt(0.6 / (2.0 * pi) * 0.5 * 2.0);
    for (double r : {0.1, 0.7, 1.9, 3.3}) CHECK(s.rel_at(r) == doctest::Approx(c * std::exp(-0.6 * r * r / 4.0)).epsilon(1e-9));
  }
  const auto spec = ModelSpec::of(kIsi, 5.36, -10, 1);
  const auto s = isi_state(spec);
  CHECK(std::abs(norm_of(s) - 1.0) < 1e-12);
  const auto pot = relative_potential(spec);
  const auto sol = numerics::solve_radial_eigen(pot, 1, s.grid);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.05, 0.8 * s.grid.r_max());
  for (int i = 0; i < 20; ++i) {
    const double r = u(rng);
    CHECK(std::abs(s.rel_at(r) - sol.grid.interpolate(sol.f, r)) < 1e-7);
  }
}

TEST_CASE("hooke_state against the finite-difference oracle") {
  // omega0 = 0.5, omega_c = 5.238, m = -5, n_r = 0.
  const auto spec = ModelSpec::of(kHooke, 5.238, -5);
  const auto s = hooke_state(spec);
  const auto pot = relative_potential(spec);
  const double fd = oracle::fd_radial_extrapolated(5.0, 0.5, pot.omega_eff, 1.0, 0, 1.2 * s.grid.r_max());
  const double fd_total = pot.omega_eff + fd + 0.5 * -5 * 5.238;
  CHECK(std::abs(s.energy / fd_total - 1.0) < 1e-8);
  CHECK(numerics::count_sign_changes(s.rel_radial) == 0);
  CHECK(std::abs(norm_of(s) - 1.0) < 1e-10);

  const auto excited = hooke_state(ModelSpec::of(kHooke, 2.0, -2, 2));
  CHECK(numerics::count_sign_changes(excited.rel_radial) == 2);

  // Coulomb switched off recovers the oscillator.
  auto off = pot;
  off.coulomb_coeff = 0.0;
  const auto osc = numerics::solve_radial_eigen(off, 0, numerics::default_radial_grid(off, 0));
  CHECK(std::abs(osc.energy - pot.omega_eff * 6.0) < 1e-10 * osc.energy);
}

TEST_CASE("ground_state_m examples") {
  CHECK(ground_state_m(kIsi, 0.0) == 0);
  CHECK(ground_state_m(kIsi, 5.36) == -10);
  CHECK(ground_state_m(kHooke, 5.238) == -5);
  CHECK(ground_state_m(kHooke, 0.0) == 0);
}

TEST_CASE("ground_state_m is the argmin and resolves ties to the smaller |m|") {
  for (double wc : {0.5, 2.0, 3.3, 6.1, 7.9}) {
    const int m = ground_state_m(kIsi, wc);
    const double e = total_energy(kIsi, wc, m);
    for (int k = 0; k >= -30; --k) CHECK(total_energy(kIsi, wc, k) >= e);
  }
  const double wt = transition_frequency(kIsi, -10);
  CHECK(ground_state_m(kIsi, wt - 1e-9) == -9);
  CHECK(ground_state_m(kIsi, wt + 1e-9) == -10);
}

TEST_CASE("ground_state_m gives up past m = -200") {
  // Vanishing confinement: every extra unit of |m| lowers the energy.
  CHECK_THROWS_AS(ground_state_m({System::ISI, 1e-6, 1e-6}, 50.0), RangeError);
}

TEST_CASE("transition_frequency matches the ISI closed form") {
  for (int m = -1; m >= -14; --m) {
    const double wt = transition_frequency(kIsi, m);
    CHECK(std::abs(wt - closed_form_transition(0.6, 5.0, m)) < 1e-9);
    CHECK(std::abs(total_energy(kIsi, wt, m) - total_energy(kIsi, wt, m + 1)) < 1e-10);
  }
  CHECK_THROWS_AS(transition_frequency(kIsi, 0), DomainError);
}

TEST_CASE("reference_frequency") {
  const double ref = reference_frequency(kIsi, -10);
  CHECK(std::abs(ref / 5.36 - 1.0) < 5e-3);
  CHECK(ref == doctest::Approx(0.5 * (closed_form_transition(0.6, 5.0, -10) + closed_form_transition(0.6, 5.0, -11))));
  const SystemFamily weak{System::ISI, 0.1, 5.0};
  for (int m = -1; m >= -10; --m) {
    const double r = reference_frequency(weak, m);
    CHECK(r > transition_frequency(weak, m));
    CHECK(r < transition_frequency(weak, m - 1));
  }
}

TEST_CASE("transition tables increase with |m| for both systems") {
  for (const auto& fam : {kIsi, kHooke}) {
    const auto table = transition_table(fam, 0.0, 8.0);
    REQUIRE(table.rows.size() >= 5);
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
      CHECK(table.rows[i].omega_t > table.rows[i - 1].omega_t);
      CHECK(table.rows[i].m == table.rows[i - 1].m - 1);
    }
  }
}

TEST_CASE("Zeeman term lowers negative-m energies relative to m = 0 as the field grows") {
  for (const auto& fam : {kIsi, kHooke}) {
    for (int m : {-1, -4}) {
      double prev = 1e300;
      for (double wc = 0.0; wc <= 8.0; wc += 1.0) {
        const double gap = total_energy(fam, wc, m) - total_energy(fam, wc, 0);
        CHECK(gap < prev);
        prev = gap;
      }
    }
  }
}

TEST_CASE("model specs are validated") {
  CHECK_THROWS_AS(isi_state(ModelSpec::of(kIsi, 1.0, 1)), DomainError);
  CHECK_THROWS_AS(isi_state(ModelSpec::of({System::ISI, -0.6, 5.0}, 1.0, -1)), DomainError);
  CHECK_THROWS_AS(isi_state(ModelSpec::of({System::ISI, 0.6, 0.0}, 1.0, -1)), DomainError);
  CHECK_THROWS_AS(isi_state(ModelSpec::of(kHooke, 1.0, -1)), InputError);
  CHECK_THROWS_AS(hooke_state(ModelSpec::of(kHooke, -1.0, -1)), DomainError);
  CHECK(parse_system("ISI") == System::ISI);
  CHECK_THROWS_AS(parse_system("helium"), InputError);
}
