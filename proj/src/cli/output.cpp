#include "magmetric/cli/output.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "magmetric/errors.hpp"

namespace magmetric::cli {

using experiments::DistanceRecord;

namespace {

std::string fixed(double v, int decimals) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;   // drop the sign of -0
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.*f", decimals, v);
  std::string s(buf.data());
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
  return s;
}

void head(std::ostringstream& out, const std::vector<std::string>& provenance) {
  for (const auto& line : provenance) out << "# " << line << "\n";
}

std::string_view sys(models::System s) { return models::to_string(s); }

struct Column {
  std::string_view name, label;
  double DistanceRecord::*field;
};

constexpr std::array kColumns{
    Column{"omega_c", "ω_c", &DistanceRecord::omega_c},
    Column{"D_psi", "D_ψ", &DistanceRecord::d_psi},
    Column{"D_rho", "D_ρ", &DistanceRecord::d_rho},
    Column{"D_jp", "D_jp", &DistanceRecord::d_jp},
    Column{"D_jp_rescaled", "D_jp / (|m| + |m_ref|)", &DistanceRecord::d_jp_rescaled},
    Column{"ratio_jp_rho", "D_jp / D_ρ", &DistanceRecord::ratio_jp_rho},
    Column{"ratio_jp_psi", "D_jp / D_ψ", &DistanceRecord::ratio_jp_psi},
};

const Column& column(std::string_view name) {
  for (const auto& c : kColumns)
    if (c.name == name) return c;
  throw InputError("unknown axis '" + std::string(name) + "'");
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// 1, 2 or 5 times a power of ten, about `target` ticks over the range.
double tick_step(double lo, double hi, int target = 6) {
  const double raw = (hi - lo) / target;
  const double p = std::pow(10.0, std::floor(std::log10(raw)));
  for (double f : {1.0, 2.0, 5.0})
    if (raw <= f * p) return f * p;
  return 10.0 * p;
}

std::string tick_label(double v, double step) {
  const int decimals = std::max(0, static_cast<int>(-std::floor(std::log10(step) + 1e-9)));
  return fixed(v, decimals);
}

}  // namespace

std::string format_value(double v) { return fixed(v, 12); }

std::string csv_text(const std::vector<DistanceRecord>& records, const std::vector<std::string>& provenance) {
  std::ostringstream out;
  head(out, provenance);
  out << kCsvHeader << "\n";
  for (const auto& r : records) {
    out << sys(r.system) << ',' << format_value(r.omega0) << ',' << format_value(r.alpha) << ','
        << format_value(r.omega_c) << ',' << r.m << ',' << r.m_ref << ',' << format_value(r.omega_c_ref) << ','
        << format_value(r.d_psi) << ',' << format_value(r.d_rho) << ',' << format_value(r.d_jp) << ','
        << format_value(r.d_jp_rescaled) << ',' << format_value(r.ratio_jp_rho) << ','
        << format_value(r.ratio_jp_psi) << "\n";
  }
  return out.str();
}

std::string energy_csv_text(const experiments::EnergyScan& scan, const std::vector<std::string>& provenance) {
  std::ostringstream out;
  head(out, provenance);
  out << "system,omega0,alpha,omega_c,m,energy,ground\n";
  for (std::size_t i = 0; i < scan.omega_c.size(); ++i)
    for (std::size_t j = 0; j < scan.m_values.size(); ++j)
      out << sys(scan.family.system) << ',' << format_value(scan.family.omega0) << ','
          << format_value(scan.family.alpha) << ',' << format_value(scan.omega_c[i]) << ',' << scan.m_values[j]
          << ',' << format_value(scan.energy[i][j]) << ',' << (scan.ground_m[i] == scan.m_values[j] ? 1 : 0)
          << "\n";
  return out.str();
}

std::string transitions_csv_text(const models::TransitionTable& table, const std::vector<std::string>& provenance) {
  std::ostringstream out;
  head(out, provenance);
  out << "system,omega0,alpha,m_from,m_to,omega_t\n";
  for (const auto& row : table.rows)
    out << sys(table.family.system) << ',' << format_value(table.family.omega0) << ','
        << format_value(table.family.alpha) << ',' << row.m + 1 << ',' << row.m << ',' << format_value(row.omega_t)
        << "\n";
  return out.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& stdout_stream) {
  if (path == "-") {
    stdout_stream << text;
    stdout_stream.flush();
    if (!stdout_stream) throw IoError("failed writing to standard output");
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  f.close();
  if (!f) throw IoError("failed writing '" + path + "'");
}

void emit_csv(const std::vector<DistanceRecord>& records, const std::string& path,
              const std::vector<std::string>& provenance, std::ostream& stdout_stream) {
  if (records.empty()) throw InputError("emit_csv: no records");
  write_output(path, csv_text(records, provenance), stdout_stream);
}

Axes parse_axes(std::string_view spec) {
  const auto colon = spec.find(':');
  if (spec.empty() || colon == std::string_view::npos || colon == 0 || colon + 1 == spec.size())
    throw InputError("axes must look like 'x:y', got '" + std::string(spec) + "'");
  return {std::string(spec.substr(0, colon)), std::string(spec.substr(colon + 1))};
}

Figure record_figure(const std::vector<DistanceRecord>& records, const Axes& axes, std::string title) {
  if (records.empty()) throw InputError("record_figure: no records");
  const auto& cx = column(axes.x);
  const auto& cy = column(axes.y);
  Figure fig{std::move(title), std::string(cx.label), std::string(cy.label), {}};
  std::map<int, Series, std::greater<>> by_m;
  for (const auto& r : records) {
    auto& s = by_m[r.m];
    s.label = "m = " + std::to_string(r.m);
    s.points.emplace_back(r.*cx.field, r.*cy.field);
  }
  for (auto& [m, s] : by_m) fig.series.push_back(std::move(s));
  return fig;
}

Figure scan_figure(const experiments::EnergyScan& scan, std::string title) {
  if (scan.omega_c.empty()) throw InputError("scan_figure: empty scan");
  Figure fig{std::move(title), "ω_c", "E", {}};
  for (std::size_t j = 0; j < scan.m_values.size(); ++j) {
    Series s{"m = " + std::to_string(scan.m_values[j]), {}, true};
    for (std::size_t i = 0; i < scan.omega_c.size(); ++i) s.points.emplace_back(scan.omega_c[i], scan.energy[i][j]);
    fig.series.push_back(std::move(s));
  }
  return fig;
}

std::string svg_text(const Figure& fig) {
  constexpr double W = 760, H = 500, left = 80, right = 600, top = 40, bottom = 440;
  constexpr std::array<std::string_view, 10> palette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                                     "#17becf", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22"};
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : fig.series)
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      x0 = std::min(x0, x), x1 = std::max(x1, x), y0 = std::min(y0, y), y1 = std::max(y1, y);
    }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 == x0) x0 -= 0.5, x1 += 0.5;
  if (y1 == y0) y0 -= 0.5, y1 += 0.5;
  const double sx = tick_step(x0, x1), sy = tick_step(y0, y1);
  x0 = std::floor(x0 / sx) * sx, x1 = std::ceil(x1 / sx) * sx;
  y0 = std::floor(y0 / sy) * sy, y1 = std::ceil(y1 / sy) * sy;
  auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * (right - left); };
  auto py = [&](double y) { return bottom - (y - y0) / (y1 - y0) * (bottom - top); };
  auto num = [](double v) { return fixed(v, 2); };

  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
    << ' ' << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << num((left + right) / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
    << escape(fig.title) << "</text>\n";
  o << "<g stroke=\"#dddddd\" stroke-width=\"0.5\">\n";
  for (double t = x0; t <= x1 + 1e-9 * sx; t += sx)
    o << "<line x1=\"" << num(px(t)) << "\" y1=\"" << num(top) << "\" x2=\"" << num(px(t)) << "\" y2=\""
      << num(bottom) << "\"/>\n";
  for (double t = y0; t <= y1 + 1e-9 * sy; t += sy)
    o << "<line x1=\"" << num(left) << "\" y1=\"" << num(py(t)) << "\" x2=\"" << num(right) << "\" y2=\""
      << num(py(t)) << "\"/>\n";
  o << "</g>\n";
  o << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(right - left) << "\" height=\""
    << num(bottom - top) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double t = x0; t <= x1 + 1e-9 * sx; t += sx)
    o << "<text x=\"" << num(px(t)) << "\" y=\"" << num(bottom + 16) << "\" text-anchor=\"middle\">"
      << tick_label(t, sx) << "</text>\n";
  for (double t = y0; t <= y1 + 1e-9 * sy; t += sy)
    o << "<text x=\"" << num(left - 6) << "\" y=\"" << num(py(t) + 4) << "\" text-anchor=\"end\">"
      << tick_label(t, sy) << "</text>\n";
  o << "<text x=\"" << num((left + right) / 2) << "\" y=\"" << num(bottom + 40) << "\" text-anchor=\"middle\">"
    << escape(fig.x_label) << "</text>\n"
    << "<text x=\"20\" y=\"" << num((top + bottom) / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
    << num((top + bottom) / 2) << ")\">" << escape(fig.y_label) << "</text>\n";

  for (std::size_t k = 0; k < fig.series.size(); ++k) {
    const auto& s = fig.series[k];
    const auto color = palette[k % palette.size()];
    if (s.line) {
      o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
      bool first = true;
      for (const auto& [x, y] : s.points) {
        if (!std::isfinite(x) || !std::isfinite(y)) continue;
        o << (first ? "" : " ") << num(px(x)) << ',' << num(py(y));
        first = false;
      }
      o << "\"/>\n";
    } else {
      o << "<g fill=\"" << color << "\">\n";
      for (const auto& [x, y] : s.points)
        if (std::isfinite(x) && std::isfinite(y))
          o << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y)) << "\" r=\"1.8\"/>\n";
      o << "</g>\n";
    }
    const double ly = top + 14.0 * k + 6;
    o << "<rect x=\"" << num(right + 16) << "\" y=\"" << num(ly - 8) << "\" width=\"10\" height=\"10\" fill=\""
      << color << "\"/><text x=\"" << num(right + 32) << "\" y=\"" << num(ly + 1) << "\">" << escape(s.label)
      << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

void emit_svg(const Figure& fig, const std::string& path) {
  if (fig.series.empty()) throw InputError("emit_svg: nothing to plot");
  if (path.empty() || path == "-") throw InputError("emit_svg: needs a file path");
  std::ostringstream unused;
  write_output(path, svg_text(fig), unused);
}

}  // namespace magmetric::cli
