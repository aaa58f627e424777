#include "magmetric/gauge/profiles.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>
#include <utility>

#include "magmetric/errors.hpp"

namespace magmetric::gauge {

namespace {

double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

std::vector<Monomial> normalize(std::vector<Monomial> in) {
  std::map<std::pair<int, int>, double> acc;
  for (const auto& t : in) acc[{t.q_pow, t.z_pow}] += t.coeff;
  std::vector<Monomial> out;
  for (const auto& [k, c] : acc)
    if (c != 0.0) out.push_back({c, k.first, k.second});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Profile parse() {
    std::vector<Monomial> terms;
    skip();
    int sign = 1;
    if (peek() == '+' || peek() == '-') sign = take() == '-' ? -1 : 1;
    for (;;) {
      auto t = term();
      t.coeff *= sign;
      terms.push_back(t);
      skip();
      if (pos_ == s_.size()) break;
      const char c = take();
      if (c != '+' && c != '-') fail("expected '+' or '-'");
      sign = c == '-' ? -1 : 1;
    }
    return Profile(std::move(terms));
  }

 private:
  Monomial term() {
    Monomial m{1.0, 0, 0};
    for (;;) {
      factor(m);
      skip();
      if (peek() != '*') return m;
      take();
    }
  }

  void factor(Monomial& m) {
    skip();
    const char c = peek();
    if (c == 'q' || c == 'z') {
      take();
      int power = 1;
      skip();
      if (peek() == '^') {
        take();
        power = static_cast<int>(number());
        if (power < 0 || power != std::floor(power)) fail("exponents must be non-negative integers");
      }
      (c == 'q' ? m.q_pow : m.z_pow) += power;
      return;
    }
    double value = number();
    skip();
    if (peek() == '/') {
      take();
      const double den = number();
      if (den == 0.0) fail("division by zero");
      value /= den;
    }
    m.coeff *= value;
  }

  double number() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
    if (start == pos_) fail("expected a number, 'q' or 'z'");
    const std::string text(s_.substr(start, pos_ - start));
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size()) fail("malformed number '" + text + "'");
    return v;
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char take() { return s_[pos_++]; }
  [[noreturn]] void fail(const std::string& why) const {
    throw InputError("profile '" + std::string(s_) + "': " + why + " at position " + std::to_string(pos_));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

}  // namespace

Profile::Profile(std::vector<Monomial> terms) : terms_(normalize(std::move(terms))) {}

Profile Profile::constant(double c) { return Profile({{c, 0, 0}}); }

double Profile::operator()(double q, double z) const {
  double sum = 0.0;
  for (const auto& t : terms_) sum += t.coeff * ipow(q, t.q_pow) * ipow(z, t.z_pow);
  return sum;
}

Profile Profile::d_q() const {
  std::vector<Monomial> out;
  for (const auto& t : terms_)
    if (t.q_pow > 0) out.push_back({t.coeff * t.q_pow, t.q_pow - 1, t.z_pow});
  return Profile(std::move(out));
}

Profile Profile::d_z() const {
  std::vector<Monomial> out;
  for (const auto& t : terms_)
    if (t.z_pow > 0) out.push_back({t.coeff * t.z_pow, t.q_pow, t.z_pow - 1});
  return Profile(std::move(out));
}

Profile Profile::operator+(const Profile& o) const {
  auto all = terms_;
  all.insert(all.end(), o.terms_.begin(), o.terms_.end());
  return Profile(std::move(all));
}

Profile Profile::scaled(double s) const {
  auto all = terms_;
  for (auto& t : all) t.coeff *= s;
  return Profile(std::move(all));
}

std::string Profile::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os.precision(12);
  bool first = true;
  for (const auto& t : terms_) {
    double c = t.coeff;
    if (!first) {
      os << (c < 0 ? " - " : " + ");
      c = std::abs(c);
    }
    os << c;
    if (t.q_pow) os << "*q" << (t.q_pow > 1 ? "^" + std::to_string(t.q_pow) : "");
    if (t.z_pow) os << "*z" << (t.z_pow > 1 ? "^" + std::to_string(t.z_pow) : "");
    first = false;
  }
  return os.str();
}

Profile parse_profile(std::string_view text) {
  if (trim(text).empty()) throw InputError("empty profile expression");
  return Parser(text).parse();
}

GaugeProfiles GaugeProfiles::symmetric(double b) { return {Profile{}, Profile::constant(-0.5 * b), Profile{}}; }

std::string GaugeProfiles::to_string() const {
  return "alpha=" + alpha.to_string() + ";beta=" + beta.to_string() + ";gamma=" + gamma.to_string();
}

GaugeProfiles parse_gauge_profiles(std::string_view spec) {
  GaugeProfiles out;
  std::size_t start = 0;
  while (start <= spec.size()) {
    const std::size_t end = std::min(spec.find(';', start), spec.size());
    const std::string item = trim(spec.substr(start, end - start));
    start = end + 1;
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("profile item '" + item + "' lacks '='");
    const std::string name = trim(std::string_view(item).substr(0, eq));
    const Profile p = parse_profile(std::string_view(item).substr(eq + 1));
    if (name == "alpha") out.alpha = p;
    else if (name == "beta") out.beta = p;
    else if (name == "gamma") out.gamma = p;
    else throw InputError("unknown profile '" + name + "' (expected alpha, beta or gamma)");
  }
  return out;
}

Vec3 vector_potential(const GaugeProfiles& p, const Vec3& r) {
  const double q = r[0] * r[0] + r[1] * r[1], z = r[2];
  const double a = p.alpha(q, z), b = p.beta(q, z);
  return {r[0] * a + r[1] * b, r[1] * a - r[0] * b, p.gamma(q, z)};
}

Vec3 magnetic_field(const GaugeProfiles& p, const Vec3& r) {
  const double x = r[0], y = r[1], z = r[2], q = x * x + y * y;
  const double az = p.alpha.d_z()(q, z), bq = p.beta.d_q()(q, z), bz = p.beta.d_z()(q, z);
  const double gq = p.gamma.d_q()(q, z);
  return {2.0 * y * gq - y * az + x * bz, x * az + y * bz - 2.0 * x * gq, -2.0 * p.beta(q, z) - 2.0 * q * bq};
}

double divergence(const GaugeProfiles& p, const Vec3& r) {
  const double q = r[0] * r[0] + r[1] * r[1], z = r[2];
  return 2.0 * p.alpha(q, z) + 2.0 * q * p.alpha.d_q()(q, z) + p.gamma.d_z()(q, z);
}

Vec3 landau_potential(double b, const Vec3& r) { return {0.0, b * r[0], 0.0}; }

GaugeProfiles gauge_transform(const GaugeProfiles& g, const Profile& chi) {
  return {g.alpha + chi.d_q().scaled(-2.0), g.beta, g.gamma + chi.d_z().scaled(-1.0)};
}

GaugeProfiles random_gauge_profiles(std::mt19937_64& rng, int max_degree, int max_terms) {
  if (max_degree < 0 || max_terms < 1) throw InputError("random_gauge_profiles: bad degree or term count");
  std::uniform_int_distribution<int> count(1, max_terms), coeff(-2, 2), deg(0, max_degree);
  auto one = [&] {
    std::vector<Monomial> terms;
    const int n = count(rng);
    for (int t = 0; t < n; ++t) {
      int k = coeff(rng);
      if (k == 0) k = 1;
      const int a = deg(rng);
      const int b = std::uniform_int_distribution<int>(0, max_degree - a)(rng);
      terms.push_back({0.25 * k, a, b});
    }
    return Profile(std::move(terms));
  };
  GaugeProfiles g;
  g.alpha = one();
  g.beta = one();
  g.gamma = one();
  return g;
}

}  // namespace magmetric::gauge
