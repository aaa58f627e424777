#pragma once

#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "magmetric/gauge/fields.hpp"

namespace magmetric::gauge {

/// c q^a z^b with q = x^2 + y^2.
struct Monomial {
  double coeff = 0.0;
  int q_pow = 0;
  int z_pow = 0;
};

/// Polynomial in (q, z). Closed under the partial derivatives the gauge
/// algebra needs, so every derivative is analytic.
class Profile {
 public:
  Profile() = default;
  explicit Profile(std::vector<Monomial> terms);
  static Profile constant(double c);

  double operator()(double q, double z) const;
  Profile d_q() const;
  Profile d_z() const;
  Profile operator+(const Profile& o) const;
  Profile scaled(double s) const;
  bool is_zero() const { return terms_.empty(); }
  const std::vector<Monomial>& terms() const { return terms_; }
  std::string to_string() const;

 private:
  std::vector<Monomial> terms_;  // merged, no zero coefficients
};

/// Parses sums of terms like "3", "-1/2*q^2*z", "z*q"; integer or decimal
/// coefficients with an optional "/denominator". Throws InputError.
Profile parse_profile(std::string_view text);

/// A = [x alpha + y beta, y alpha - x beta, gamma], each profile a function
/// of (x^2 + y^2, z). Every such A has L_z as a constant of motion.
struct GaugeProfiles {
  Profile alpha, beta, gamma;

  /// Symmetric gauge for a uniform field B along z: alpha = 0, beta = -B/2.
  static GaugeProfiles symmetric(double b);
  std::string to_string() const;
};

/// "alpha=q;beta=0;gamma=z*q"; omitted profiles are zero. Throws InputError
/// on unknown names or malformed expressions.
GaugeProfiles parse_gauge_profiles(std::string_view spec);

/// Profiles of A' = A - grad chi for chi = P(q, z): alpha' = alpha - 2 P_q,
/// beta' = beta, gamma' = gamma - P_z.
GaugeProfiles gauge_transform(const GaugeProfiles& g, const Profile& chi);

/// Random member of the family: each profile gets up to `max_terms`
/// monomials q^a z^b with a + b <= max_degree and coefficients k/4,
/// k in [-2, 2].
GaugeProfiles random_gauge_profiles(std::mt19937_64& rng, int max_degree = 2, int max_terms = 2);

Vec3 vector_potential(const GaugeProfiles& p, const Vec3& r);
/// curl A from the analytic profile derivatives.
Vec3 magnetic_field(const GaugeProfiles& p, const Vec3& r);
/// div A = 2 alpha + 2 q alpha_q + gamma_z.
double divergence(const GaugeProfiles& p, const Vec3& r);

/// Landau gauge with the same field as GaugeProfiles::symmetric(b): A = (0, b x, 0).
Vec3 landau_potential(double b, const Vec3& r);

}  // namespace magmetric::gauge
