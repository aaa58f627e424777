#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "magmetric/experiments/experiments.hpp"

namespace magmetric::cli {

inline constexpr std::string_view kCsvHeader =
    "system,omega0,alpha,omega_c,m,m_ref,omega_c_ref,D_psi,D_rho,D_jp,D_jp_rescaled,ratio_jp_rho,ratio_jp_psi";

/// Fixed notation with 12 decimals; "nan" where undefined; no negative zero.
std::string format_value(double v);

/// `provenance` lines are written first, each prefixed with "# ".
std::string csv_text(const std::vector<experiments::DistanceRecord>& records,
                     const std::vector<std::string>& provenance = {});
std::string energy_csv_text(const experiments::EnergyScan& scan, const std::vector<std::string>& provenance = {});
std::string transitions_csv_text(const models::TransitionTable& table, const std::vector<std::string>& provenance = {});

/// Writes `text` to `path`, or to `stdout_stream` when path is "-".
/// Throws IoError.
void write_output(const std::string& path, const std::string& text, std::ostream& stdout_stream);

/// Throws InputError on an empty record list.
void emit_csv(const std::vector<experiments::DistanceRecord>& records, const std::string& path,
              const std::vector<std::string>& provenance, std::ostream& stdout_stream);

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
  bool line = false;   // polyline instead of markers
};

struct Figure {
  std::string title, x_label, y_label;
  std::vector<Series> series;
};

/// "x:y" with column names from the CSV header (omega_c, m, D_psi, ...).
/// Scan figures accept only "omega_c:E". Throws InputError.
struct Axes {
  std::string x, y;
};
Axes parse_axes(std::string_view spec);

/// One marker series per m.
Figure record_figure(const std::vector<experiments::DistanceRecord>& records, const Axes& axes, std::string title);
/// One curve per m: total energy against omega_c.
Figure scan_figure(const experiments::EnergyScan& scan, std::string title);

/// Standalone SVG document; non-finite points are dropped.
std::string svg_text(const Figure& fig);
void emit_svg(const Figure& fig, const std::string& path);

}  // namespace magmetric::cli
