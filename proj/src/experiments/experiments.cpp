#include "magmetric/experiments/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <thread>

#include "magmetric/errors.hpp"
#include "magmetric/metrics/metrics.hpp"
#include "magmetric/observables/observables.hpp"

namespace magmetric::experiments {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Evaluates fn(0..n-1) on up to `workers` threads; results keep index order
// and the lowest-index exception is rethrown, so output does not depend on
// the worker count.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, int workers, F&& fn) {
  std::vector<std::optional<T>> out(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t i; (i = next++) < n;) {
      try {
        out[i].emplace(fn(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int w = std::max(1, std::min<int>(workers, static_cast<int>(n)));
  if (w == 1) {
    run();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < w; ++t) pool.emplace_back(run);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<T> res;
  res.reserve(n);
  for (auto& o : out) res.push_back(std::move(*o));
  return res;
}

struct Sample {
  models::TwoElectronState state;
  observables::DensityProfile rho;
  observables::CurrentProfile jp;
};

Sample sample(const models::SystemFamily& fam, double wc, int m) {
  auto st = models::make_state(models::ModelSpec::of(fam, wc, m));
  auto rho = observables::density_profile(st);
  auto jp = observables::current_profile(st);
  return {std::move(st), std::move(rho), std::move(jp)};
}

double safe_ratio(double num, double den) { return den == 0.0 ? kNaN : num / den; }

DistanceRecord record(const Sample& s, const Sample& ref) {
  DistanceRecord r;
  r.system = s.state.spec.system;
  r.omega0 = s.state.spec.omega0;
  r.alpha = s.state.spec.alpha;
  r.omega_c = s.state.spec.omega_c;
  r.m = s.state.spec.m;
  r.m_ref = ref.state.spec.m;
  r.omega_c_ref = ref.state.spec.omega_c;
  r.d_psi = metrics::wavefunction_distance(s.state, ref.state);
  r.d_rho = metrics::density_distance(s.rho, ref.rho);
  r.d_jp = metrics::current_distance(s.jp, ref.jp);
  r.d_jp_rescaled = safe_ratio(r.d_jp, std::abs(r.m) + std::abs(r.m_ref));
  r.ratio_jp_rho = safe_ratio(r.d_jp, r.d_rho);
  r.ratio_jp_psi = safe_ratio(r.d_jp, r.d_psi);
  return r;
}

std::vector<double> with_points(std::vector<double> grid, const std::vector<double>& extra) {
  grid.insert(grid.end(), extra.begin(), extra.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

// Grid points that match the reference up to rounding become the reference,
// so its row comes out exactly zero.
std::vector<double> snapped(std::vector<double> grid, double wc_ref) {
  for (double& w : grid)
    if (std::abs(w - wc_ref) <= 1e-9 * std::max(1.0, wc_ref)) w = wc_ref;
  return grid;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  if (x.size() < 2) return kNaN;
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
  mx /= n, my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

std::string to_string(Policy p) { return p == Policy::Ground ? "ground" : "fixed-m"; }

std::vector<double> uniform_grid(double lo, double hi, int steps) {
  if (steps < 1 || !(hi >= lo) || !std::isfinite(lo) || !std::isfinite(hi))
    throw InputError("uniform_grid: need steps >= 1 and lo <= hi");
  if (steps == 1) return {lo};
  if (!(hi > lo)) throw InputError("uniform_grid: lo == hi with several steps");
  std::vector<double> g(steps);
  for (int i = 0; i < steps; ++i) g[i] = lo + (hi - lo) * i / (steps - 1);
  g.back() = hi;
  return g;
}

void FamilySpec::validate() const {
  family.validate();
  if (omega_c_grid.empty()) throw InputError("family: empty omega_c grid");
  for (std::size_t i = 0; i < omega_c_grid.size(); ++i) {
    if (!(omega_c_grid[i] >= 0.0)) throw DomainError("family: omega_c must be non-negative");
    if (i > 0 && !(omega_c_grid[i] > omega_c_grid[i - 1]))
      throw InputError("family: omega_c grid must be strictly increasing");
  }
  if (workers < 1) throw InputError("family: workers must be >= 1");
  if (policy == Policy::FixedM) {
    if (m_list.empty()) throw InputError("fixed-m family: empty m list");
    for (int m : m_list)
      if (m > 0) throw DomainError("fixed-m family: m must be <= 0");
    if (!omega_c_ref) throw InputError("fixed-m family: omega_c_ref is required");
    if (*omega_c_ref < omega_c_grid.front() || *omega_c_ref > omega_c_grid.back())
      throw InputError("fixed-m family: omega_c_ref lies outside the omega_c grid");
  } else {
    if (m_ref > 0) throw DomainError("ground family: m_ref must be <= 0");
    if (!omega_c_ref && m_ref == 0) throw InputError("ground family: the midpoint rule needs m_ref < 0");
  }
}

double FamilySpec::reference_omega_c() const {
  if (omega_c_ref) return *omega_c_ref;
  return models::reference_frequency(family, m_ref);
}

EnergyScan energy_scan(const models::SystemFamily& fam, const std::vector<double>& grid, int m_min, int workers) {
  fam.validate();
  if (grid.empty()) throw InputError("energy_scan: empty grid");
  if (m_min > 0) throw InputError("energy_scan: m_min must be <= 0");
  EnergyScan scan;
  scan.family = fam;
  scan.omega_c = grid;
  for (int m = 0; m >= m_min; --m) scan.m_values.push_back(m);
  struct Row {
    std::vector<double> e;
    int gs;
  };
  auto rows = parallel_map<Row>(grid.size(), workers, [&](std::size_t i) {
    Row r;
    for (int m : scan.m_values) r.e.push_back(models::total_energy(fam, grid[i], m));
    r.gs = models::ground_state_m(fam, grid[i]);
    return r;
  });
  for (auto& r : rows) {
    scan.energy.push_back(std::move(r.e));
    scan.ground_m.push_back(r.gs);
  }
  scan.transitions.family = fam;
  if (grid.back() > grid.front()) scan.transitions = models::transition_table(fam, grid.front(), grid.back());
  return scan;
}

std::vector<DistanceRecord> ground_family_distances(const FamilySpec& spec) {
  if (spec.policy != Policy::Ground) throw InputError("ground_family_distances: not a ground-state family");
  spec.validate();
  const auto& fam = spec.family;
  const double wc_ref = spec.reference_omega_c();
  if (spec.m_ref != models::ground_state_m(fam, wc_ref))
    throw InputError("ground family: m_ref is not the ground state at the reference frequency");
  const Sample ref = sample(fam, wc_ref, spec.m_ref);

  std::vector<double> extra;
  if (spec.refine_transitions) {
    const auto table = models::transition_table(fam, spec.omega_c_grid.front(), spec.omega_c_grid.back());
    for (const auto& row : table.rows)
      for (int i = 0; i < 20; ++i) extra.push_back(row.omega_t + 0.05 * (2 * i - 19) / 19.0);
  }
  auto grid = with_points(snapped(spec.omega_c_grid, wc_ref), extra);
  std::erase_if(grid, [](double w) { return w < 0.0; });

  return parallel_map<DistanceRecord>(grid.size(), spec.workers, [&](std::size_t i) {
    if (grid[i] == wc_ref) return record(ref, ref);
    return record(sample(fam, grid[i], models::ground_state_m(fam, grid[i])), ref);
  });
}

std::vector<DistanceRecord> fixed_m_family_distances(const FamilySpec& spec) {
  if (spec.policy != Policy::FixedM) throw InputError("fixed_m_family_distances: not a fixed-m family");
  spec.validate();
  const auto& fam = spec.family;
  const double wc_ref = *spec.omega_c_ref;
  const auto grid = snapped(spec.omega_c_grid, wc_ref);
  const auto refs = parallel_map<Sample>(spec.m_list.size(), spec.workers,
                                         [&](std::size_t k) { return sample(fam, wc_ref, spec.m_list[k]); });
  const std::size_t nm = spec.m_list.size();
  // Index order = omega_c major, m_list minor: already the output order.
  return parallel_map<DistanceRecord>(grid.size() * nm, spec.workers, [&](std::size_t idx) {
    const std::size_t i = idx / nm, k = idx % nm;
    if (grid[i] == wc_ref) return record(refs[k], refs[k]);
    return record(sample(fam, grid[i], spec.m_list[k]), refs[k]);
  });
}

std::vector<DistanceRecord> family_distances(const FamilySpec& spec) {
  return spec.policy == Policy::Ground ? ground_family_distances(spec) : fixed_m_family_distances(spec);
}

std::vector<BandJump> band_jumps(const FamilySpec& spec, double step) {
  if (spec.policy != Policy::Ground) throw InputError("band_jumps: needs a ground-state family");
  spec.validate();
  if (!(step > 0.0)) throw InputError("band_jumps: step must be positive");
  const auto& fam = spec.family;
  const double wc_ref = spec.reference_omega_c();
  const Sample ref = sample(fam, wc_ref, models::ground_state_m(fam, wc_ref));
  const auto table = models::transition_table(fam, spec.omega_c_grid.front(), spec.omega_c_grid.back());
  return parallel_map<BandJump>(table.rows.size(), spec.workers, [&](std::size_t i) {
    const double wt = table.rows[i].omega_t;
    const auto below = record(sample(fam, wt - step, models::ground_state_m(fam, wt - step)), ref);
    const auto above = record(sample(fam, wt + step, models::ground_state_m(fam, wt + step)), ref);
    return BandJump{below.m, above.m, wt, above.d_psi - below.d_psi, above.d_rho - below.d_rho,
                    above.d_jp - below.d_jp};
  });
}

std::vector<BandSummary> band_summaries(const std::vector<DistanceRecord>& recs) {
  std::vector<BandSummary> out;
  for (std::size_t i = 0; i < recs.size();) {
    std::size_t j = i;
    while (j < recs.size() && recs[j].m == recs[i].m) ++j;
    BandSummary b{};
    b.m = recs[i].m;
    b.omega_lo = recs[i].omega_c;
    b.omega_hi = recs[j - 1].omega_c;
    b.count = j - i;
    b.psi_min = b.rho_min = b.jp_min = std::numeric_limits<double>::infinity();
    b.psi_max = b.rho_max = b.jp_max = -std::numeric_limits<double>::infinity();
    std::size_t arg_min = i;
    for (std::size_t k = i; k < j; ++k) {
      if (recs[k].d_psi < b.psi_min) arg_min = k;
      b.psi_min = std::min(b.psi_min, recs[k].d_psi);
      b.psi_max = std::max(b.psi_max, recs[k].d_psi);
      b.rho_min = std::min(b.rho_min, recs[k].d_rho);
      b.rho_max = std::max(b.rho_max, recs[k].d_rho);
      b.jp_min = std::min(b.jp_min, recs[k].d_jp);
      b.jp_max = std::max(b.jp_max, recs[k].d_jp);
    }
    b.adjacent_to_reference = std::abs(b.m - recs[i].m_ref) == 1;
    b.interior_psi_minimum = arg_min > i && arg_min + 1 < j && recs[arg_min].d_psi < recs[i].d_psi &&
                             recs[arg_min].d_psi < recs[j - 1].d_psi;
    out.push_back(b);
    i = j;
  }
  return out;
}

std::vector<BandOverlap> band_overlaps(const std::vector<BandSummary>& bands, int m_ref) {
  std::map<int, const BandSummary*> by_m;
  for (const auto& b : bands) by_m[b.m] = &b;
  std::vector<BandOverlap> out;
  for (const auto& b : bands) {
    if (b.m == m_ref) continue;
    const int nearer = b.m < m_ref ? b.m + 1 : b.m - 1;
    const auto it = by_m.find(nearer);
    if (it == by_m.end()) continue;
    out.push_back({b.m, nearer, b.psi_min, it->second->psi_max, b.psi_min < it->second->psi_max});
  }
  return out;
}

RatioCurves ratio_curves(const std::vector<DistanceRecord>& recs, Policy policy, double window) {
  if (recs.empty()) throw InputError("ratio_curves: no records");
  RatioCurves out;
  std::map<int, std::vector<double>> by_m;
  std::vector<int> order;
  for (const auto& r : recs) {
    if (r.d_rho == 0.0) continue;
    const double ratio = r.d_jp / r.d_rho;
    out.rows.push_back({r.m, r.omega_c, r.d_psi, ratio});
    if (policy == Policy::FixedM && r.d_psi > window) continue;
    if (!by_m.contains(r.m)) order.push_back(r.m);
    by_m[r.m].push_back(ratio);
  }
  for (int m : order) {
    const auto& v = by_m[m];
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    var /= static_cast<double>(v.size());
    const bool is_ref = std::any_of(recs.begin(), recs.end(), [&](const auto& r) { return r.m == m && r.m_ref == m; });
    out.segments.push_back({m, is_ref, v.size(), mean, std::sqrt(var) / std::abs(mean)});
  }
  return out;
}

SlopeTable slope_ratios(const std::vector<DistanceRecord>& recs, double wc_below, double wc_above) {
  SlopeTable t;
  std::vector<int> ms;
  for (const auto& r : recs)
    if (std::find(ms.begin(), ms.end(), r.m) == ms.end()) ms.push_back(r.m);
  std::vector<double> x_below, y_below, x_above, y_above;
  for (int m : ms) {
    if (m == 0) throw InputError("slope_ratios: k is undefined for m = 0");
    for (int dir : {-1, +1}) {
      const double target = dir < 0 ? wc_below : wc_above;
      const DistanceRecord* best = nullptr;
      for (const auto& r : recs)
        if (r.m == m && (!best || std::abs(r.omega_c - target) < std::abs(best->omega_c - target))) best = &r;
      if (!best || std::abs(best->omega_c - target) > 0.25)
        throw InputError("slope_ratios: no sweep point near omega_c = " + std::to_string(target));
      if ((best->omega_c - best->omega_c_ref) * dir <= 0.0)
        throw InputError("slope_ratios: nearest point to " + std::to_string(target) + " is on the wrong side of the reference");
      const double k = best->d_jp / (std::abs(m) * best->d_psi);
      t.rows.push_back({m, dir, best->omega_c, best->d_psi, best->d_jp, k});
      (dir < 0 ? x_below : x_above).push_back(std::abs(m));
      (dir < 0 ? y_below : y_above).push_back(best->d_jp / best->d_psi);
    }
  }
  t.correlation_below = pearson(x_below, y_below);
  t.correlation_above = pearson(x_above, y_above);
  return t;
}

namespace {

struct Branch {
  int m, side;
  std::vector<std::pair<double, double>> pts;   // (D_psi, D_rho) sorted by D_psi
};

std::vector<Branch> branches(const std::vector<DistanceRecord>& recs) {
  std::map<std::pair<int, int>, Branch> by;
  for (const auto& r : recs) {
    if (r.omega_c == r.omega_c_ref) continue;
    const int side = r.omega_c < r.omega_c_ref ? -1 : 1;
    auto& b = by[{r.m, side}];
    b.m = r.m;
    b.side = side;
    b.pts.emplace_back(r.d_psi, r.d_rho);
  }
  std::vector<Branch> out;
  for (auto& [key, b] : by) {
    std::sort(b.pts.begin(), b.pts.end());
    out.push_back(std::move(b));
  }
  return out;
}

double interp(const std::vector<std::pair<double, double>>& pts, double x) {
  auto it = std::lower_bound(pts.begin(), pts.end(), std::make_pair(x, -std::numeric_limits<double>::infinity()));
  if (it == pts.begin()) return it->second;
  if (it == pts.end()) return pts.back().second;
  const auto& [x1, y1] = *it;
  const auto& [x0, y0] = *(it - 1);
  return x1 == x0 ? y1 : y0 + (y1 - y0) * (x - x0) / (x1 - x0);
}

}  // namespace

double curve_collapse_deviation(const std::vector<DistanceRecord>& recs) {
  const auto bs = branches(recs);
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& r : recs) lo = std::min(lo, r.d_rho), hi = std::max(hi, r.d_rho);
  if (!(hi > lo)) return 0.0;
  double worst = 0.0;
  for (std::size_t a = 0; a < bs.size(); ++a)
    for (std::size_t b = a + 1; b < bs.size(); ++b) {
      if (bs[a].side != bs[b].side || bs[a].m == bs[b].m || bs[a].pts.empty() || bs[b].pts.empty()) continue;
      const double x0 = std::max(bs[a].pts.front().first, bs[b].pts.front().first);
      const double x1 = std::min(bs[a].pts.back().first, bs[b].pts.back().first);
      for (const auto* br : {&bs[a], &bs[b]})
        for (const auto& [x, y] : br->pts) {
          if (x < x0 || x > x1) continue;
          worst = std::max(worst, std::abs(interp(bs[a].pts, x) - interp(bs[b].pts, x)));
        }
    }
  return worst / (hi - lo);
}

namespace {

// Records of one m in omega_c order.
std::map<int, std::vector<const DistanceRecord*>> per_m(const std::vector<DistanceRecord>& recs) {
  std::map<int, std::vector<const DistanceRecord*>> out;
  for (const auto& r : recs) out[r.m].push_back(&r);
  for (auto& [m, v] : out)
    std::stable_sort(v.begin(), v.end(), [](auto* a, auto* b) { return a->omega_c < b->omega_c; });
  return out;
}

}  // namespace

int continuity_violations(const std::vector<DistanceRecord>& recs) {
  int bad = 0;
  for (const auto& [m, v] : per_m(recs)) {
    for (auto field : {&DistanceRecord::d_psi, &DistanceRecord::d_rho, &DistanceRecord::d_jp}) {
      for (std::size_t i = 1; i + 2 < v.size(); ++i) {
        const double prev = std::abs(v[i]->*field - v[i - 1]->*field);
        const double jump = std::abs(v[i + 1]->*field - v[i]->*field);
        const double next = std::abs(v[i + 2]->*field - v[i + 1]->*field);
        if (jump > 5.0 * std::max(prev, next) + 1e-12) ++bad;
      }
    }
  }
  return bad;
}

int monotonicity_violations(const std::vector<DistanceRecord>& recs) {
  int bad = 0;
  for (const auto& [m, v] : per_m(recs)) {
    for (std::size_t i = 1; i < v.size(); ++i) {
      const auto* a = v[i - 1];
      const auto* b = v[i];
      const double ref = a->omega_c_ref;
      if (b->omega_c <= ref && b->d_jp > a->d_jp) ++bad;   // approaching from below
      if (a->omega_c >= ref && b->d_jp < a->d_jp) ++bad;   // leaving above
    }
  }
  return bad;
}

}  // namespace magmetric::experiments
