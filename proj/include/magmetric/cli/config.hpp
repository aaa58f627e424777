#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "magmetric/experiments/experiments.hpp"

namespace magmetric::cli {

enum class Subcommand { Scan, Transitions, GroundFamily, FixedMFamily, GaugeCheck };
std::string_view to_string(Subcommand c);
Subcommand parse_subcommand(std::string_view name);

/// Raw key -> value text, from a config file or from command-line flags.
using Settings = std::map<std::string, std::string>;

/// Keys accepted by a subcommand, in a fixed display order.
std::vector<std::string> keys_for(Subcommand c);

/// Flat `key = value` lines grouped under `[section]` headers; `#` and `;`
/// start comments. Throws IoError if unreadable, InputError naming the key
/// or section on anything it does not know.
Settings read_config_file(const std::string& path);
Settings parse_config_text(std::string_view text, std::string_view origin = "config");

struct RunConfig {
  Subcommand command = Subcommand::Scan;
  models::SystemFamily family;
  double wc_min = 0.0, wc_max = 0.0;
  int wc_steps = 400;
  int m_min = -20;
  std::optional<int> m_ref;
  std::optional<double> wc_ref;
  std::vector<int> m_list;
  bool refine = false;
  int workers = 1;
  std::string out = "-";   // "-" is standard output
  std::string svg, report, axes;
  double threshold = 0.10;   // ratio constancy, relative standard deviation

  std::string profile;
  std::optional<double> landau;
  int dim = 3;
  std::vector<int> n_list;
  int order = 0;   // 0: spectral
  double width = 0.35;

  std::string reference_rule;   // "midpoint(-10)" or "fixed(5)"
  /// Every applicable key with its resolved value, for provenance headers.
  std::vector<std::pair<std::string, std::string>> resolved;

  experiments::FamilySpec family_spec() const;
};

/// Merges file and flag settings, fills defaults (each one echoed to `log`)
/// and validates. A key given in both places must carry the same value.
RunConfig resolve_config(Subcommand c, const Settings& file, const Settings& flags, std::ostream& log);

}  // namespace magmetric::cli
