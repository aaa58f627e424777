#include "magmetric/cli/config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "magmetric/errors.hpp"
#include "magmetric/models/models.hpp"

namespace magmetric::cli {

namespace {

enum class Kind { Real, Int, IntList, Bool, System, Text, Order };

constexpr unsigned kScan = 1, kTrans = 2, kGround = 4, kFixed = 8, kGauge = 16;
constexpr unsigned kPhysics = kScan | kTrans | kGround | kFixed;
constexpr unsigned kFamilies = kGround | kFixed;

struct Key {
  std::string_view name, section;
  Kind kind;
  unsigned used_by;
};

constexpr std::array kKeys{
    Key{"system", "system", Kind::System, kPhysics},
    Key{"omega0", "system", Kind::Real, kPhysics},
    Key{"alpha", "system", Kind::Real, kPhysics},
    Key{"wc-min", "sweep", Kind::Real, kPhysics},
    Key{"wc-max", "sweep", Kind::Real, kPhysics},
    Key{"wc-steps", "sweep", Kind::Int, kScan | kFamilies},
    Key{"m-min", "sweep", Kind::Int, kScan},
    Key{"m-list", "sweep", Kind::IntList, kFixed},
    Key{"refine", "sweep", Kind::Bool, kGround},
    Key{"workers", "sweep", Kind::Int, kScan | kFamilies},
    Key{"mref", "reference", Kind::Int, kTrans | kGround},
    Key{"wc-ref", "reference", Kind::Real, kFamilies},
    Key{"threshold", "analysis", Kind::Real, kFamilies},
    Key{"profile", "gauge", Kind::Text, kGauge},
    Key{"landau", "gauge", Kind::Real, kGauge},
    Key{"dim", "gauge", Kind::Int, kGauge},
    Key{"n-list", "gauge", Kind::IntList, kGauge},
    Key{"order", "gauge", Kind::Order, kGauge},
    Key{"width", "gauge", Kind::Real, kGauge},
    Key{"out", "output", Kind::Text, kPhysics | kGauge},
    Key{"svg", "output", Kind::Text, kScan | kFamilies},
    Key{"axes", "output", Kind::Text, kScan | kFamilies},
    Key{"report", "output", Kind::Text, kFamilies},
};

unsigned bit(Subcommand c) {
  switch (c) {
    case Subcommand::Scan: return kScan;
    case Subcommand::Transitions: return kTrans;
    case Subcommand::GroundFamily: return kGround;
    case Subcommand::FixedMFamily: return kFixed;
    case Subcommand::GaugeCheck: return kGauge;
  }
  return 0;
}

const Key* find_key(std::string_view name) {
  for (const auto& k : kKeys)
    if (k.name == name) return &k;
  return nullptr;
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string shortest(double v) {
  std::array<char, 64> buf{};
  auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), p);
}

double to_real(std::string_view key, const std::string& text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [p, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || p != end || !std::isfinite(v))
    throw InputError("invalid number for '" + std::string(key) + "': " + text);
  return v;
}

int to_int(std::string_view key, const std::string& text) {
  int v = 0;
  const char* begin = text.data();
  if (!text.empty() && text[0] == '+') ++begin;
  const auto* end = text.data() + text.size();
  auto [p, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || p != end || begin == end)
    throw InputError("invalid integer for '" + std::string(key) + "': " + text);
  return v;
}

std::vector<int> to_int_list(std::string_view key, const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(to_int(key, trim(item)));
  if (out.empty()) throw InputError("empty list for '" + std::string(key) + "'");
  return out;
}

bool to_bool(std::string_view key, const std::string& text) {
  std::string t = text;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw InputError("invalid boolean for '" + std::string(key) + "': " + text);
}

int to_order(std::string_view key, const std::string& text) {
  if (text == "spectral") return 0;
  const int o = to_int(key, text);
  if (o == 0 || o < 2 || o > 64 || o % 2) throw InputError("'order' must be 'spectral' or an even integer in [2, 64]");
  return o;
}

// Normal form of a value, so that "0.6" and "0.60" agree.
std::string canonical(const Key& k, const std::string& raw) {
  const std::string v = trim(raw);
  switch (k.kind) {
    case Kind::Real: return shortest(to_real(k.name, v));
    case Kind::Int: return std::to_string(to_int(k.name, v));
    case Kind::IntList: {
      std::string s;
      for (int x : to_int_list(k.name, v)) s += (s.empty() ? "" : ",") + std::to_string(x);
      return s;
    }
    case Kind::Bool: return to_bool(k.name, v) ? "true" : "false";
    case Kind::System:
      try {
        return std::string(models::to_string(models::parse_system(v)));
      } catch (const InputError&) {
        throw InputError("invalid value for 'system': " + v + " (expected isi or hooke)");
      }
    case Kind::Order: return to_order(k.name, v) == 0 ? "spectral" : std::to_string(to_order(k.name, v));
    case Kind::Text: return v;
  }
  return v;
}

std::optional<std::string> default_for(Subcommand c, std::string_view key) {
  using S = Subcommand;
  if (key == "system") return "isi";
  if (key == "wc-steps") return "400";
  if (key == "workers") return "1";
  if (key == "out") return "-";
  if (key == "threshold") return "0.1";
  if (key == "refine") return "false";
  if (key == "m-min") return "-20";
  if (key == "m-list") return "-1,-2,-3,-8,-9,-10";
  if (key == "dim") return "3";
  if (key == "n-list") return "25,29,33";
  if (key == "order") return "spectral";
  if (key == "width") return "0.35";
  if (key == "axes") return c == S::Scan ? "omega_c:E" : "D_psi:D_rho";
  if (key == "wc-min") return c == S::GroundFamily ? "3" : (c == S::FixedMFamily ? "0.05" : "0");
  if (key == "wc-max") return c == S::FixedMFamily ? "20" : "8";
  if (key == "wc-ref" && c == S::FixedMFamily) return "5";
  return std::nullopt;
}

}  // namespace

std::string_view to_string(Subcommand c) {
  switch (c) {
    case Subcommand::Scan: return "scan";
    case Subcommand::Transitions: return "transitions";
    case Subcommand::GroundFamily: return "ground-family";
    case Subcommand::FixedMFamily: return "fixed-m-family";
    case Subcommand::GaugeCheck: return "gauge-check";
  }
  return "?";
}

Subcommand parse_subcommand(std::string_view name) {
  for (auto c : {Subcommand::Scan, Subcommand::Transitions, Subcommand::GroundFamily, Subcommand::FixedMFamily,
                 Subcommand::GaugeCheck})
    if (to_string(c) == name) return c;
  throw InputError("unknown subcommand '" + std::string(name) + "'");
}

std::vector<std::string> keys_for(Subcommand c) {
  std::vector<std::string> out;
  for (const auto& k : kKeys)
    if (k.used_by & bit(c)) out.emplace_back(k.name);
  return out;
}

Settings parse_config_text(std::string_view text, std::string_view origin) {
  Settings out;
  std::string section;
  std::istringstream in{std::string(text)};
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    const auto where = std::string(origin) + ":" + std::to_string(line_no);
    if (auto c = line.find_first_of("#;"); c != std::string::npos) line.erase(c);
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw InputError(where + ": malformed section header");
      section = trim(std::string_view(t).substr(1, t.size() - 2));
      const bool known = std::any_of(kKeys.begin(), kKeys.end(), [&](const Key& k) { return k.section == section; });
      if (!known) throw InputError(where + ": unknown section [" + section + "]");
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw InputError(where + ": expected 'key = value'");
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string value = trim(std::string_view(t).substr(eq + 1));
    const Key* k = find_key(key);
    if (!k) throw InputError(where + ": unknown key '" + key + "'");
    if (!section.empty() && k->section != section)
      throw InputError(where + ": key '" + key + "' belongs in [" + std::string(k->section) + "], not [" + section + "]");
    if (out.contains(key)) throw InputError(where + ": key '" + key + "' given twice");
    out[key] = value;
  }
  return out;
}

Settings read_config_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  if (f.bad()) throw IoError("error reading config file '" + path + "'");
  return parse_config_text(ss.str(), path);
}

experiments::FamilySpec RunConfig::family_spec() const {
  experiments::FamilySpec s;
  s.family = family;
  s.policy = command == Subcommand::FixedMFamily ? experiments::Policy::FixedM : experiments::Policy::Ground;
  s.omega_c_grid = experiments::uniform_grid(wc_min, wc_max, wc_steps);
  s.workers = workers;
  s.omega_c_ref = wc_ref;
  if (s.policy == experiments::Policy::FixedM) {
    s.m_list = m_list;
  } else {
    s.refine_transitions = refine;
    s.m_ref = m_ref ? *m_ref : models::ground_state_m(family, *wc_ref);
  }
  return s;
}

RunConfig resolve_config(Subcommand c, const Settings& file, const Settings& flags, std::ostream& log) {
  const auto keys = keys_for(c);
  const auto applies = [&](const std::string& k) { return std::find(keys.begin(), keys.end(), k) != keys.end(); };
  for (const auto* src : {&file, &flags})
    for (const auto& [k, v] : *src) {
      if (!find_key(k)) throw InputError("unknown key '" + k + "'");
      if (!applies(k)) throw InputError("key '" + k + "' does not apply to " + std::string(to_string(c)));
    }

  std::map<std::string, std::string> value;
  for (const auto& name : keys) {
    const Key& k = *find_key(name);
    const auto f = file.find(name), g = flags.find(name);
    std::optional<std::string> fv, gv;
    if (f != file.end()) fv = canonical(k, f->second);
    if (g != flags.end()) gv = canonical(k, g->second);
    if (fv && gv && *fv != *gv)
      throw InputError("conflicting values for '" + name + "': config file has " + *fv + ", flag has " + *gv);
    if (gv) {
      value[name] = *gv;
    } else if (fv) {
      value[name] = *fv;
    } else if (auto d = default_for(c, name)) {
      value[name] = canonical(k, *d);
      log << "default: " << name << " = " << value[name] << "\n";
    }
  }

  RunConfig cfg;
  cfg.command = c;
  const auto has = [&](const char* k) { return value.contains(k); };
  const auto real = [&](const char* k) { return to_real(k, value.at(k)); };
  const auto integer = [&](const char* k) { return to_int(k, value.at(k)); };
  const auto require = [&](const char* k) {
    if (!has(k)) throw InputError("missing required setting --" + std::string(k));
  };

  if (bit(c) & kPhysics) {
    cfg.family.system = models::parse_system(value.at("system"));
    require("omega0");
    cfg.family.omega0 = real("omega0");
    if (cfg.family.system == models::System::ISI) {
      require("alpha");
      cfg.family.alpha = real("alpha");
    } else {
      if (has("alpha")) throw InputError("'alpha' applies to the isi system only");
      cfg.family.alpha = 0.0;
    }
    cfg.family.validate();
    cfg.wc_min = real("wc-min");
    cfg.wc_max = real("wc-max");
    if (cfg.wc_min < 0.0) throw InputError("'wc-min' must be non-negative");
    if (!(cfg.wc_max > cfg.wc_min)) throw InputError("'wc-max' must exceed 'wc-min'");
  }
  if (has("wc-steps")) {
    cfg.wc_steps = integer("wc-steps");
    if (cfg.wc_steps < 2) throw InputError("'wc-steps' must be at least 2");
  }
  if (has("workers")) {
    cfg.workers = integer("workers");
    if (cfg.workers < 1) throw InputError("'workers' must be at least 1");
  }
  if (has("m-min")) {
    cfg.m_min = integer("m-min");
    if (cfg.m_min > 0) throw InputError("'m-min' must be <= 0");
  }
  if (has("m-list") && c == Subcommand::FixedMFamily) {
    cfg.m_list = to_int_list("m-list", value.at("m-list"));
    for (int m : cfg.m_list)
      if (m >= 0) throw InputError("'m-list' entries must be negative");
  }
  if (has("refine")) cfg.refine = to_bool("refine", value.at("refine"));
  if (has("mref")) {
    cfg.m_ref = integer("mref");
    if (*cfg.m_ref > 0) throw InputError("'mref' must be <= 0");
  }
  if (has("wc-ref")) {
    cfg.wc_ref = real("wc-ref");
    if (*cfg.wc_ref < cfg.wc_min || *cfg.wc_ref > cfg.wc_max)
      throw InputError("'wc-ref' must lie inside [wc-min, wc-max]");
  }
  if (has("threshold")) {
    cfg.threshold = real("threshold");
    if (!(cfg.threshold > 0.0)) throw InputError("'threshold' must be positive");
  }
  if (has("out")) cfg.out = value.at("out");
  if (has("svg")) cfg.svg = value.at("svg");
  if (has("report")) cfg.report = value.at("report");
  if (has("axes")) cfg.axes = value.at("axes");
  if (cfg.out.empty()) throw InputError("'out' must not be empty");

  switch (c) {
    case Subcommand::GroundFamily:
      if (!cfg.m_ref && !cfg.wc_ref) throw InputError("ground-family needs --mref or --wc-ref");
      if (cfg.m_ref && *cfg.m_ref == 0 && !cfg.wc_ref) throw InputError("the midpoint rule needs --mref < 0");
      cfg.reference_rule = cfg.wc_ref ? "fixed(" + value.at("wc-ref") + ")" : "midpoint(" + value.at("mref") + ")";
      break;
    case Subcommand::FixedMFamily:
      cfg.reference_rule = "same-m(" + value.at("wc-ref") + ")";
      break;
    case Subcommand::GaugeCheck: {
      if (has("profile") == has("landau")) throw InputError("gauge-check needs exactly one of --profile and --landau");
      if (has("profile")) cfg.profile = value.at("profile");
      if (has("landau")) cfg.landau = real("landau");
      cfg.dim = integer("dim");
      if (cfg.dim != 2 && cfg.dim != 3) throw InputError("'dim' must be 2 or 3");
      cfg.n_list = to_int_list("n-list", value.at("n-list"));
      for (int n : cfg.n_list)
        if (n < 5) throw InputError("'n-list' entries must be at least 5");
      cfg.order = to_order("order", value.at("order"));
      cfg.width = real("width");
      if (!(cfg.width > 0.0)) throw InputError("'width' must be positive");
      break;
    }
    default: break;
  }

  for (const auto& name : keys) cfg.resolved.emplace_back(name, value.contains(name) ? value.at(name) : "none");
  return cfg;
}

}  // namespace magmetric::cli
