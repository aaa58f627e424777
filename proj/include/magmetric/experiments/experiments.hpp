#pragma once

#include <optional>
#include <string>
#include <vector>

#include "magmetric/models/models.hpp"

namespace magmetric::experiments {

enum class Policy { Ground, FixedM };
std::string to_string(Policy p);

/// A family of states swept over omega_c and the reference they are
/// measured against.
struct FamilySpec {
  models::SystemFamily family;
  Policy policy = Policy::Ground;
  std::vector<int> m_list;            // fixed-m families only
  std::vector<double> omega_c_grid;   // strictly increasing
  int m_ref = 0;                      // ground families; fixed-m uses each m
  std::optional<double> omega_c_ref;  // unset: midpoint of the transitions around m_ref
  bool refine_transitions = false;    // 20 extra points within +-0.05 of each transition
  int workers = 1;

  void validate() const;
  double reference_omega_c() const;
};

/// `steps` points from lo to hi inclusive.
std::vector<double> uniform_grid(double lo, double hi, int steps);

struct DistanceRecord {
  models::System system;
  double omega0, alpha, omega_c;
  int m, m_ref;
  double omega_c_ref;
  double d_psi, d_rho, d_jp;
  double d_jp_rescaled;   // D_jp / (|m| + |m_ref|), the current-shell diameter; NaN when both are 0
  double ratio_jp_rho;    // NaN where D_rho = 0
  double ratio_jp_psi;    // NaN where D_psi = 0
};

struct EnergyScan {
  models::SystemFamily family;
  std::vector<double> omega_c;
  std::vector<int> m_values;                  // 0, -1, ..., m_min
  std::vector<std::vector<double>> energy;    // [omega_c index][m index]
  std::vector<int> ground_m;
  models::TransitionTable transitions;
};

/// Total energies for m = 0 down to m_min at every grid point, the ground
/// m there, and the transitions inside the grid range.
EnergyScan energy_scan(const models::SystemFamily& fam, const std::vector<double>& omega_c_grid, int m_min,
                       int workers = 1);

/// Ground-state family: m follows ground_state_m. One record per grid point
/// plus refinement points. Records sorted by omega_c.
std::vector<DistanceRecord> ground_family_distances(const FamilySpec& spec);

/// Fixed-m families, each measured against the same-m state at
/// omega_c_ref. Records sorted by omega_c, then by the order of m_list.
std::vector<DistanceRecord> fixed_m_family_distances(const FamilySpec& spec);

/// Either of the two above, by policy.
std::vector<DistanceRecord> family_distances(const FamilySpec& spec);

// ---- analyses of emitted records ----

/// Jump value(omega_t + step) - value(omega_t - step) across a ground-state
/// transition, where m changes from m_below to m_above = m_below - 1.
struct BandJump {
  int m_below, m_above;
  double omega_t;
  double d_psi, d_rho, d_jp;
};
std::vector<BandJump> band_jumps(const FamilySpec& spec, double step);

struct BandSummary {
  int m;
  double omega_lo, omega_hi;
  std::size_t count;
  double psi_min, psi_max, rho_min, rho_max, jp_min, jp_max;
  bool adjacent_to_reference;
  bool interior_psi_minimum;   // minimum strictly inside the band (nonmonotonic inset)
};
/// One entry per contiguous run of equal m, in omega_c order.
std::vector<BandSummary> band_summaries(const std::vector<DistanceRecord>& ground);

/// For every band other than the reference one: min D_psi of the band
/// against max D_psi of its neighbour one step nearer to m_ref.
struct BandOverlap {
  int m, nearer_m;
  double min_psi, nearer_max_psi;
  bool holds;   // min_psi < nearer_max_psi
};
std::vector<BandOverlap> band_overlaps(const std::vector<BandSummary>& bands, int m_ref);

struct RatioRow {
  int m;
  double omega_c, d_psi, ratio;   // ratio = D_jp / D_rho
};
struct RatioSegment {
  int m;
  bool reference_m;
  std::size_t count;
  double mean, rel_std;   // relative standard deviation (population)
};
struct RatioCurves {
  std::vector<RatioRow> rows;
  std::vector<RatioSegment> segments;
};
/// D_jp/D_rho against D_psi. Ground families: one segment per m. Fixed-m
/// families: one segment per m restricted to D_psi <= window. Rows with
/// D_rho = 0 are skipped.
RatioCurves ratio_curves(const std::vector<DistanceRecord>& records, Policy policy, double window = 1.0);

struct SlopeRow {
  int m;
  int direction;   // -1 below the reference, +1 above
  double omega_c, d_psi, d_jp, k;   // k = D_jp / (|m| D_psi)
};
struct SlopeTable {
  std::vector<SlopeRow> rows;
  double correlation_below = 0.0, correlation_above = 0.0;   // Pearson r of D_jp/D_psi against |m|
};
/// k(m) at the sweep points nearest to wc_below and wc_above (one each side
/// of the reference). Throws InputError if a family has no point within
/// 0.25 of a target or the nearest point lies on the wrong side.
SlopeTable slope_ratios(const std::vector<DistanceRecord>& fixed_m, double wc_below = 4.5, double wc_above = 6.0);

/// Largest vertical gap between D_rho(D_psi) curves of different m (same
/// side of the reference) over their common D_psi range, relative to the
/// overall D_rho range.
double curve_collapse_deviation(const std::vector<DistanceRecord>& fixed_m);

/// Number of successive-point jumps in D_psi, D_rho or D_jp that exceed 5x
/// the larger neighbouring jump (per m, in omega_c order).
int continuity_violations(const std::vector<DistanceRecord>& fixed_m);

/// Number of places where D_jp decreases while moving away from the
/// reference (per m, either side).
int monotonicity_violations(const std::vector<DistanceRecord>& fixed_m);

}  // namespace magmetric::experiments
