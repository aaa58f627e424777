#include "magmetric/gauge/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "magmetric/errors.hpp"

namespace magmetric::gauge {

GaugeFunction GaugeFunction::zero() {
  return {[](const Vec3&) { return 0.0; }, [](const Vec3&) { return Vec3{0.0, 0.0, 0.0}; }, true, "0"};
}

GaugeFunction GaugeFunction::from_profile(const Profile& p) {
  const Profile pq = p.d_q(), pz = p.d_z();
  GaugeFunction g;
  g.chi = [p](const Vec3& r) { return p(r[0] * r[0] + r[1] * r[1], r[2]); };
  g.grad = [pq, pz](const Vec3& r) {
    const double q = r[0] * r[0] + r[1] * r[1];
    const double dq = pq(q, r[2]);
    return Vec3{2.0 * r[0] * dq, 2.0 * r[1] * dq, pz(q, r[2])};
  };
  g.is_allowed = true;
  g.label = p.to_string();
  return g;
}

GaugeFunction GaugeFunction::linear(double c0, double cx, double cy) {
  GaugeFunction g;
  g.chi = [=](const Vec3& r) { return c0 + cx * r[0] + cy * r[1]; };
  g.grad = [=](const Vec3&) { return Vec3{cx, cy, 0.0}; };
  g.is_allowed = cx == 0.0 && cy == 0.0;
  std::ostringstream os;
  os << c0 << " + " << cx << "*x + " << cy << "*y";
  g.label = os.str();
  return g;
}

bool chi_is_allowed(const GaugeFunction& g) {
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const double angles[] = {std::numbers::pi / 2, std::numbers::pi, 0.7, 2.9};
  for (int i = 0; i < 16; ++i) {
    const Vec3 r{u(rng), u(rng), u(rng)};
    const double base = g.chi(r);
    for (double a : angles) {
      const double c = std::cos(a), s = std::sin(a);
      const Vec3 rr{c * r[0] - s * r[1], s * r[0] + c * r[1], r[2]};
      if (std::abs(g.chi(rr) - base) > 1e-12 * std::max(1.0, std::abs(base))) return false;
    }
  }
  return true;
}

FieldSet apply_gauge(const FieldSet& in, const GaugeFunction& chi) {
  require_same_grid(in.rho.grid, in.jp.grid, "apply_gauge");
  if (!in.psi.v.empty()) require_same_grid(in.psi.grid, in.rho.grid, "apply_gauge");
  FieldSet out = in;
  const auto& g = in.rho.grid;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec3 r = g.point(i);
    const Vec3 d = chi.grad(r);
    for (int k = 0; k < 3; ++k) out.jp.c[k][i] += in.rho.v[i] * d[k];
    if (!in.psi.v.empty()) out.psi.v[i] *= std::polar(1.0, chi.chi(r));
  }
  return out;
}

VectorField tilde_current(const VectorField& jp, const ScalarField& rho, const GaugeFunction& chi_ref) {
  require_same_grid(jp.grid, rho.grid, "tilde_current");
  VectorField out = jp;
  for (std::size_t i = 0; i < jp.grid.size(); ++i) {
    const Vec3 d = chi_ref.grad(jp.grid.point(i));
    for (int k = 0; k < 3; ++k) out.c[k][i] -= rho.v[i] * d[k];
  }
  return out;
}

double angular_moment(const VectorField& jp) {
  const auto& g = jp.grid;
  double peak = 0.0, edge = 0.0, sum = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double mag = std::hypot(jp.c[0][i], jp.c[1][i], jp.c[2][i]);
    peak = std::max(peak, mag);
    if (g.depth(i) == 0) edge = std::max(edge, mag);
    const Vec3 r = g.point(i);
    sum += r[0] * jp.c[1][i] - r[1] * jp.c[0][i];
  }
  if (edge > 1e-12 * peak)
    throw DomainError("angular_moment: current has not decayed at the grid boundary (enlarge the domain)");
  return sum * g.cell();
}

double angular_moment(const observables::CurrentProfile& c) {
  const auto r = c.grid.nodes();
  std::vector<double> t(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) t[i] = 2.0 * std::numbers::pi * r[i] * r[i] * c.j_phi[i];
  return numerics::integrate_radial(t, c.grid);
}

FieldSet model_state_fields(const observables::DensityProfile& rho, const observables::CurrentProfile& jp,
                            const CartesianGrid& grid) {
  if (grid.dim() != 2) throw InputError("model_state_fields: model states live on 2D grids");
  FieldSet out;
  out.rho = sample_scalar(grid, [&](const Vec3& r) { return rho.at(std::hypot(r[0], r[1])); });
  out.jp = sample_vector(grid, [&](const Vec3& r) {
    const double s = std::hypot(r[0], r[1]);
    if (s == 0.0) return Vec3{0.0, 0.0, 0.0};
    const double j = jp.at(s);
    return Vec3{-j * r[1] / s, j * r[0] / s, 0.0};
  });
  return out;
}

FieldSet wavefunction_fields(const CartesianGrid& grid, const std::function<cplx(const Vec3&)>& psi,
                             const std::function<std::array<cplx, 3>(const Vec3&)>& grad_psi) {
  FieldSet out;
  out.psi = sample_complex(grid, psi);
  out.rho = sample_scalar(grid, [&](const Vec3& r) { return std::norm(psi(r)); });
  out.jp = sample_vector(grid, [&](const Vec3& r) {
    const cplx p = std::conj(psi(r));
    const auto d = grad_psi(r);
    return Vec3{(p * d[0]).imag(), (p * d[1]).imag(), (p * d[2]).imag()};
  });
  return out;
}

}  // namespace magmetric::gauge
