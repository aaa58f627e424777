#include "magmetric/cli/app.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>

#include "magmetric/cli/output.hpp"
#include "magmetric/errors.hpp"
#include "magmetric/gauge/commutator.hpp"
#include "magmetric/gauge/profiles.hpp"
#include "magmetric/numerics/radial_eigen.hpp"

namespace magmetric::cli {

using experiments::DistanceRecord;

namespace {

// Residual below which the commutator is taken to vanish.
constexpr double kCommutesBelow = 1e-6;

const std::map<std::string, std::string>& help_text() {
  static const std::map<std::string, std::string> h{
      {"system", "isi or hooke"},
      {"omega0", "confinement frequency"},
      {"alpha", "inverse-square interaction strength (isi only)"},
      {"wc-min", "lowest cyclotron frequency"},
      {"wc-max", "highest cyclotron frequency"},
      {"wc-steps", "number of omega_c points, endpoints included"},
      {"m-min", "most negative m in the energy scan"},
      {"m-list", "comma-separated fixed m values"},
      {"refine", "add 20 points within +-0.05 of every transition"},
      {"workers", "worker threads for the sweep"},
      {"mref", "reference m; the reference field is the midpoint of its band"},
      {"wc-ref", "reference cyclotron frequency"},
      {"threshold", "ratio constancy threshold (relative standard deviation)"},
      {"profile", "vector potential profiles, e.g. \"alpha=q;beta=0;gamma=z*q\""},
      {"landau", "field strength B of the Landau gauge A = (0, B x, 0)"},
      {"dim", "2 or 3"},
      {"n-list", "grid points per side, comma-separated, coarse to fine"},
      {"order", "'spectral' or an even finite-difference order"},
      {"width", "width of the Gaussian test state"},
      {"out", "output file, '-' for standard output"},
      {"svg", "write an SVG figure to this file"},
      {"axes", "figure axes as x:y (CSV column names; scan takes omega_c:E)"},
      {"report", "write a plain-text analysis to this file"},
  };
  return h;
}

std::string fmt(double v, int digits = 6) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string family_line(const models::SystemFamily& f) {
  std::string s = std::string(models::to_string(f.system)) + " omega0=" + fmt(f.omega0, 12);
  if (f.system == models::System::ISI) s += " alpha=" + fmt(f.alpha, 12);
  return s;
}

double grid_step(const RunConfig& cfg) { return (cfg.wc_max - cfg.wc_min) / (cfg.wc_steps - 1); }

void write_figure(const RunConfig& cfg, const Figure& fig, std::ostream& log) {
  if (cfg.svg.empty()) return;
  emit_svg(fig, cfg.svg);
  log << "wrote " << cfg.svg << "\n";
}

void run_scan(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const auto scan = experiments::energy_scan(cfg.family, experiments::uniform_grid(cfg.wc_min, cfg.wc_max, cfg.wc_steps),
                                             cfg.m_min, cfg.workers);
  for (const auto& t : scan.transitions.rows)
    log << "transition m " << t.m + 1 << " -> " << t.m << " at omega_c = " << format_value(t.omega_t) << "\n";
  write_output(cfg.out, energy_csv_text(scan, provenance(cfg)), out);
  if (!cfg.svg.empty()) {
    if (cfg.axes != "omega_c:E") throw InputError("scan figures take --axes omega_c:E");
    write_figure(cfg, scan_figure(scan, "Energy against cyclotron frequency, " + family_line(cfg.family)), log);
  }
}

void run_transitions(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const auto table = models::transition_table(cfg.family, cfg.wc_min, cfg.wc_max);
  if (cfg.m_ref) {
    const double ref = models::reference_frequency(cfg.family, *cfg.m_ref);
    log << "reference midpoint(" << *cfg.m_ref << ") omega_c = " << format_value(ref) << "\n";
  }
  write_output(cfg.out, transitions_csv_text(table, provenance(cfg)), out);
}

void run_family(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const auto spec = cfg.family_spec();
  log << "reference " << cfg.reference_rule << ": omega_c_ref = " << format_value(spec.reference_omega_c()) << "\n";
  const auto records = experiments::family_distances(spec);
  emit_csv(records, cfg.out, provenance(cfg), out);
  const bool ground = cfg.command == Subcommand::GroundFamily;
  if (!cfg.svg.empty()) {
    const auto axes = parse_axes(cfg.axes);
    const std::string what = ground ? "Ground-state family" : "Fixed-m families";
    write_figure(cfg, record_figure(records, axes, what + ", " + family_line(cfg.family)), log);
  }
  if (!cfg.report.empty()) {
    std::ostringstream unused;
    write_output(cfg.report, ground ? ground_report(cfg, records) : fixed_m_report(cfg, records), unused);
    log << "wrote " << cfg.report << "\n";
  }
}

void run_gauge(const RunConfig& cfg, std::ostream& out) {
  const auto prob = cfg.landau ? gauge::landau_problem(*cfg.landau, cfg.dim, cfg.width)
                               : gauge::nice_gauge_problem(gauge::parse_gauge_profiles(cfg.profile), cfg.dim, cfg.width);
  const auto report = gauge::commutator_study(prob, cfg.n_list, cfg.order);
  std::ostringstream text;
  text << report.to_text();
  if (cfg.landau)
    text << "gauge: Landau, A = (0, B x, 0) with B = " << fmt(*cfg.landau, 12)
         << "; this A is not of the form that keeps L_z conserved\n";
  const bool commutes = std::abs(report.extrapolated) < kCommutesBelow;
  text << "verdict: " << (commutes ? "[H, L_z] vanishes" : "[H, L_z] does not vanish") << " (extrapolated "
       << fmt(report.extrapolated, 3) << (commutes ? " < " : " >= ") << fmt(kCommutesBelow, 1) << ")\n";
  write_output(cfg.out, text.str(), out);
}

}  // namespace

std::vector<std::string> provenance(const RunConfig& cfg) {
  std::vector<std::string> lines{"magmetric " + std::string(to_string(cfg.command))};
  for (const auto& [k, v] : cfg.resolved) lines.push_back(k + " = " + v);
  if (!cfg.reference_rule.empty()) lines.push_back("reference_rule = " + cfg.reference_rule);
  const numerics::EigenOptions eig;
  lines.push_back("tolerances: radial energy " + fmt(eig.energy_tol, 3) + ", ode " + fmt(eig.ode_tol, 3) +
                  ", tail " + fmt(eig.tail_tol, 3));
  return lines;
}

std::string ground_report(const RunConfig& cfg, const std::vector<DistanceRecord>& records) {
  std::ostringstream o;
  const auto spec = cfg.family_spec();
  o << "ground-state family: " << family_line(cfg.family) << "\n";
  o << "reference " << cfg.reference_rule << ", m_ref = " << spec.m_ref
    << ", omega_c_ref = " << format_value(spec.reference_omega_c()) << "\n\n";

  const auto bands = experiments::band_summaries(records);
  o << "bands\n     m   omega_lo   omega_hi  count   psi_min   psi_max   rho_min   rho_max    jp_min    jp_max  inset\n";
  for (const auto& b : bands) {
    char line[256];
    std::snprintf(line, sizeof line, "%6d %10.5f %10.5f %6zu %9.5f %9.5f %9.5f %9.5f %9.5f %9.5f  %s\n", b.m,
                  b.omega_lo, b.omega_hi, b.count, b.psi_min, b.psi_max, b.rho_min, b.rho_max, b.jp_min, b.jp_max,
                  b.interior_psi_minimum ? "yes" : "no");
    o << line;
  }

  const double step = grid_step(cfg);
  o << "\njumps across transitions, value(omega_t + " << fmt(step) << ") - value(omega_t - " << fmt(step) << ")\n";
  o << "  from    to    omega_t     dD_psi     dD_rho      dD_jp\n";
  for (const auto& j : experiments::band_jumps(spec, step)) {
    char line[160];
    std::snprintf(line, sizeof line, "%6d %5d %10.5f %10.5f %10.5f %10.5f\n", j.m_below, j.m_above, j.omega_t,
                  j.d_psi, j.d_rho, j.d_jp);
    o << line;
  }

  o << "\nband overlap, min D_psi of a band against max D_psi of the band nearer the reference\n";
  for (const auto& b : experiments::band_overlaps(bands, spec.m_ref))
    o << "  m = " << b.m << ": " << fmt(b.min_psi) << " vs " << fmt(b.nearer_max_psi) << " (m = " << b.nearer_m
      << ") " << (b.holds ? "overlaps" : "no overlap") << "\n";

  const auto curves = experiments::ratio_curves(records, experiments::Policy::Ground);
  o << "\nD_jp / D_rho per band (relative standard deviation, threshold " << fmt(cfg.threshold) << ")\n";
  double ref_stat = NAN, other_min = INFINITY;
  for (const auto& s : curves.segments) {
    o << "  m = " << s.m << (s.reference_m ? " (reference)" : "") << ": n = " << s.count << ", mean " << fmt(s.mean)
      << ", rel std " << fmt(s.rel_std, 4) << "\n";
    if (s.reference_m) ref_stat = s.rel_std;
    else if (s.count > 1) other_min = std::min(other_min, s.rel_std);
  }
  if (!std::isnan(ref_stat)) {
    o << "reference band constant within threshold: " << (ref_stat < cfg.threshold ? "yes" : "no") << "\n";
    if (std::isfinite(other_min))
      o << "every other band less constant than the reference band: " << (other_min > ref_stat ? "yes" : "no")
        << "\n";
  }
  return o.str();
}

std::string fixed_m_report(const RunConfig& cfg, const std::vector<DistanceRecord>& records) {
  std::ostringstream o;
  o << "fixed-m families: " << family_line(cfg.family) << ", reference " << cfg.reference_rule << "\n\n";

  double worst = -INFINITY;
  for (const auto& r : records) worst = std::max(worst, r.d_jp - 2.0 * std::abs(r.m));
  o << "max(D_jp - 2|m|) = " << fmt(worst) << (worst <= 1e-9 ? " (bound holds)" : " (bound violated)") << "\n";
  o << "D_jp decreases moving away from the reference: " << experiments::monotonicity_violations(records)
    << " times\n";
  o << "continuity violations: " << experiments::continuity_violations(records) << "\n";
  o << "D_rho(D_psi) curve collapse deviation: " << fmt(experiments::curve_collapse_deviation(records), 4)
    << " of the D_rho range\n\n";

  try {
    const auto t = experiments::slope_ratios(records);
    o << "k(m) = D_jp / (|m| D_psi)\n     m  side    omega_c        k\n";
    for (const auto& r : t.rows) {
      char line[128];
      std::snprintf(line, sizeof line, "%6d %5s %10.5f %8.5f\n", r.m, r.direction < 0 ? "below" : "above", r.omega_c,
                    r.k);
      o << line;
    }
    o << "correlation of D_jp/D_psi with |m|: below " << fmt(t.correlation_below) << ", above "
      << fmt(t.correlation_above) << "\n\n";
  } catch (const InputError& e) {
    o << "k(m) unavailable: " << e.what() << "\n\n";
  }

  o << "D_jp / D_rho over D_psi <= 1 (relative standard deviation, threshold " << fmt(cfg.threshold) << ")\n";
  for (const auto& s : experiments::ratio_curves(records, experiments::Policy::FixedM, 1.0).segments)
    o << "  m = " << s.m << ": n = " << s.count << ", mean " << fmt(s.mean) << ", rel std " << fmt(s.rel_std, 4)
      << (s.rel_std < cfg.threshold ? "" : "  (above threshold)") << "\n";
  return o.str();
}

void execute(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  switch (cfg.command) {
    case Subcommand::Scan: run_scan(cfg, out, log); break;
    case Subcommand::Transitions: run_transitions(cfg, out, log); break;
    case Subcommand::GroundFamily:
    case Subcommand::FixedMFamily: run_family(cfg, out, log); break;
    case Subcommand::GaugeCheck: run_gauge(cfg, out); break;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& log) {
  CLI::App app{"Distances between two-electron ground states in a magnetic field", "magmetric"};
  app.require_subcommand(1, 1);
  const std::map<Subcommand, std::string> about{
      {Subcommand::Scan, "total energies against omega_c for m = 0 .. m-min"},
      {Subcommand::Transitions, "ground-state transition frequencies"},
      {Subcommand::GroundFamily, "distances of ground states from a reference ground state"},
      {Subcommand::FixedMFamily, "distances within fixed-m families from their reference states"},
      {Subcommand::GaugeCheck, "finite-difference check of [H, L_z] for a vector potential"},
  };

  struct Parsed {
    CLI::App* app;
    std::string config;
    std::map<std::string, std::string> values;
  };
  std::map<Subcommand, Parsed> subs;
  for (const auto& [c, text] : about) {
    auto& p = subs[c];
    p.app = app.add_subcommand(std::string(to_string(c)), text);
    p.app->add_option("--config", p.config, "flat key = value file with [section] headers");
    for (const auto& key : keys_for(c)) {
      if (key == "refine")
        p.app->add_flag_callback("--refine", [&p] { p.values["refine"] = "true"; }, help_text().at(key));
      else
        p.app->add_option("--" + key, p.values[key], help_text().at(key));
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, log);
      return kExitOk;
    }
    log << "magmetric: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    for (auto& [c, p] : subs) {
      if (!p.app->parsed()) continue;
      Settings flags;
      for (const auto& key : keys_for(c)) {
        if (key == "refine" ? p.values.contains("refine") : p.app->count("--" + key) > 0)
          flags[key] = p.values[key];
      }
      const Settings file = p.config.empty() ? Settings{} : read_config_file(p.config);
      const auto cfg = resolve_config(c, file, flags, log);
      execute(cfg, out, log);
    }
  } catch (const InputError& e) {
    log << "magmetric: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    log << "magmetric: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    log << "magmetric: " << e.what() << "\n";
    return kExitIo;
  } catch (const NumericalError& e) {
    log << "magmetric: numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace magmetric::cli
