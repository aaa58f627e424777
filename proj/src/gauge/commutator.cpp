#include "magmetric/gauge/commutator.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "magmetric/errors.hpp"
#include "magmetric/numerics/roots.hpp"

namespace magmetric::gauge {

Stencil centred_stencil(int order, int n) {
  if (order == kSpectral) {
    // Limit of the centred family: d_k = (-1)^{k+1}/k, c_k = 2 d_k / k,
    // reaching across the whole grid.
    if (n < 2) throw InputError("spectral stencil needs the grid size");
    Stencil s{kSpectral, std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
    s.d2[0] = -std::numbers::pi * std::numbers::pi / 3.0;
    for (int k = 1; k < n; ++k) {
      s.d1[k] = ((k % 2) ? 1.0 : -1.0) / k;
      s.d2[k] = 2.0 * s.d1[k] / k;
    }
    return s;
  }
  if (order < 2 || order > 64 || order % 2) throw InputError("stencil order must be even and in [2, 64]");
  const int p = order / 2;
  Stencil s{order, std::vector<double>(p + 1, 0.0), std::vector<double>(p + 1, 0.0)};
  // d_k = (-1)^{k+1} (p!)^2 / (k (p-k)! (p+k)!), c_k = 2 d_k / k.
  for (int k = 1; k <= p; ++k) {
    const double ratio = std::exp(2.0 * std::lgamma(p + 1.0) - std::lgamma(p - k + 1.0) - std::lgamma(p + k + 1.0));
    s.d1[k] = ((k % 2) ? 1.0 : -1.0) * ratio / k;
    s.d2[k] = 2.0 * s.d1[k] / k;
    s.d2[0] -= 2.0 * s.d2[k];
  }
  return s;
}

namespace {

class Operators {
 public:
  Operators(const CommutatorProblem& prob, const CartesianGrid& g, const Stencil& st)
      : g_(g), st_(st), n_(g.n()), dim_(g.dim()) {
    const std::size_t size = g.size();
    a_.resize(size);
    pot_.resize(size);
    const double h = g.h();
    // A need not decay, so div A always uses a finite stencil on the callback.
    const Stencil ds = centred_stencil(st.order == kSpectral ? 16 : st.order);
    const int p = static_cast<int>(ds.d1.size()) - 1;
    for (std::size_t i = 0; i < size; ++i) {
      const Vec3 r = g.point(i);
      a_[i] = prob.A(r);
      double div = 0.0;
      for (int axis = 0; axis < dim_; ++axis)
        for (int k = 1; k <= p; ++k) {
          Vec3 rp = r, rm = r;
          rp[axis] += k * h;
          rm[axis] -= k * h;
          div += ds.d1[k] * (prob.A(rp)[axis] - prob.A(rm)[axis]) / h;
        }
      const double a2 = a_[i][0] * a_[i][0] + a_[i][1] * a_[i][1] + a_[i][2] * a_[i][2];
      // Multiplicative part: -(i/2) div A + A^2/2 + V.
      pot_[i] = cplx(0.5 * a2 + prob.V(r), -0.5 * div);
    }
  }

  std::vector<cplx> hamiltonian(const std::vector<cplx>& f) const {
    std::vector<cplx> out(f.size());
    const double h = g_.h();
    const cplx I(0.0, 1.0);
    for (std::size_t i = 0; i < f.size(); ++i) {
      cplx lap = 0.0, adv = 0.0;
      for (int axis = 0; axis < dim_; ++axis) {
        const cplx d = deriv(f, i, axis);
        adv += a_[i][axis] * d;
        lap += second(f, i, axis);
      }
      out[i] = -0.5 * lap / (h * h) - I * adv / h + pot_[i] * f[i];
    }
    return out;
  }

  std::vector<cplx> lz(const std::vector<cplx>& f) const {
    std::vector<cplx> out(f.size());
    const double h = g_.h();
    const cplx I(0.0, 1.0);
    for (std::size_t i = 0; i < f.size(); ++i) {
      const Vec3 r = g_.point(i);
      out[i] = -I * (r[0] * deriv(f, i, 1) - r[1] * deriv(f, i, 0)) / h;
    }
    return out;
  }

 private:
  // Neighbour value with zero padding outside the box.
  cplx at(const std::vector<cplx>& f, std::size_t i, int axis, int k) const {
    const std::size_t stride = axis == 0 ? 1 : (axis == 1 ? static_cast<std::size_t>(n_) : static_cast<std::size_t>(n_) * n_);
    const int c = static_cast<int>((i / stride) % n_) + k;
    if (c < 0 || c >= n_) return 0.0;
    return f[static_cast<std::size_t>(static_cast<long long>(i) + static_cast<long long>(k) * static_cast<long long>(stride))];
  }
  cplx deriv(const std::vector<cplx>& f, std::size_t i, int axis) const {
    cplx s = 0.0;
    for (std::size_t k = 1; k < st_.d1.size(); ++k)
      s += st_.d1[k] * (at(f, i, axis, static_cast<int>(k)) - at(f, i, axis, -static_cast<int>(k)));
    return s;
  }
  cplx second(const std::vector<cplx>& f, std::size_t i, int axis) const {
    cplx s = st_.d2[0] * f[i];
    for (std::size_t k = 1; k < st_.d2.size(); ++k)
      s += st_.d2[k] * (at(f, i, axis, static_cast<int>(k)) + at(f, i, axis, -static_cast<int>(k)));
    return s;
  }

  const CartesianGrid& g_;
  const Stencil& st_;
  int n_, dim_;
  std::vector<Vec3> a_;
  std::vector<cplx> pot_;
};

}  // namespace

double commutator_residual(const CommutatorProblem& prob, int n, int order) {
  if (!prob.A || !prob.V || !prob.psi) throw InputError("commutator problem is incomplete");
  const CartesianGrid g(prob.dim, n, prob.half_width);
  const Stencil st = centred_stencil(order, n);
  const auto psi = sample_complex(g, prob.psi);

  // Zero padding stands in for psi beyond the box; it must be negligible
  // on the outermost layer already.
  double peak = 0.0, rim = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double a = std::abs(psi.v[i]);
    peak = std::max(peak, a);
    if (g.depth(i) == 0) rim = std::max(rim, a);
  }
  if (rim > 1e-10 * peak)
    throw DomainError("commutator_residual: psi does not decay before the stencil meets the boundary");

  const Operators ops(prob, g, st);
  const auto hl = ops.hamiltonian(ops.lz(psi.v));
  const auto lh = ops.lz(ops.hamiltonian(psi.v));
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    num += std::norm(hl[i] - lh[i]);
    den += std::norm(psi.v[i]);
  }
  return std::sqrt(num / den);
}

namespace {

// R(h) = R0 + sum_t a_t h^{order + 2(t-1)}, one unknown per level.
double richardson_limit(const std::vector<CommutatorLevel>& levels, int order) {
  const int m = static_cast<int>(levels.size());
  Eigen::MatrixXd M(m, m);
  Eigen::VectorXd b(m);
  for (int i = 0; i < m; ++i) {
    const double h = levels[i].h;
    M(i, 0) = 1.0;
    for (int t = 1; t < m; ++t) M(i, t) = std::pow(h, order + 2 * (t - 1));
    b(i) = levels[i].residual;
  }
  return M.colPivHouseholderQr().solve(b)(0);
}

// Sinc differentiation of Gaussian-decaying fields converges like
// exp(-c/h^2); fit R0 + a exp(-c x), x = 1/h^2, through the last three
// levels. Without a consistent geometric trend the finest residual stands.
double spectral_limit(const std::vector<CommutatorLevel>& levels) {
  const std::size_t m = levels.size();
  if (m < 3) return levels.back().residual;
  const auto& l1 = levels[m - 3];
  const auto& l2 = levels[m - 2];
  const auto& l3 = levels[m - 1];
  const double x1 = 1.0 / (l1.h * l1.h), x2 = 1.0 / (l2.h * l2.h), x3 = 1.0 / (l3.h * l3.h);
  const double d1 = l1.residual - l2.residual, d2 = l2.residual - l3.residual;
  const double dx1 = x2 - x1, dx2 = x3 - x2;
  if (!(d1 * d2 > 0.0) || !(std::abs(d1 / d2) > dx1 / dx2) || !(dx1 > 0.0 && dx2 > 0.0)) return l3.residual;
  // (e^{c dx1} - 1) / (1 - e^{-c dx2}) = d1/d2, increasing in c.
  const double target = std::log(d1 / d2);
  auto g = [&](double c) { return std::log(std::expm1(c * dx1)) - std::log(-std::expm1(-c * dx2)) - target; };
  double lo = 1e-8, hi = 1.0;
  if (g(lo) > 0.0) return l3.residual;
  while (g(hi) < 0.0) {
    hi *= 2.0;
    if (hi > 1e4) return l3.residual;
  }
  const double c = numerics::find_root_bracketed(g, lo, hi, 1e-12 * hi);
  return l3.residual - d2 / std::expm1(c * dx2);
}

}  // namespace

CommutatorReport commutator_study(const CommutatorProblem& prob, const std::vector<int>& ns, int order) {
  if (ns.empty()) throw InputError("commutator_study needs at least one grid");
  CommutatorReport rep;
  rep.label = prob.label;
  rep.order = order;
  for (int n : ns) {
    const CartesianGrid g(prob.dim, n, prob.half_width);
    rep.levels.push_back({n, g.h(), commutator_residual(prob, n, order)});
  }
  rep.extrapolated = order == kSpectral ? spectral_limit(rep.levels) : richardson_limit(rep.levels, order);
  return rep;
}

std::string CommutatorReport::to_text() const {
  std::ostringstream os;
  char line[160];
  os << "potential: " << label << "\n";
  if (order == kSpectral)
    os << "stencil: spectral (sinc), limit from R0 + a exp(-c/h^2)\n";
  else
    os << "stencil order: " << order << ", limit by Richardson in h\n";
  os << "     n          h           residual\n";
  for (const auto& l : levels) {
    std::snprintf(line, sizeof line, "%6d  %10.6f  %17.10e\n", l.n, l.h, l.residual);
    os << line;
  }
  std::snprintf(line, sizeof line, "extrapolated (h -> 0): %.10e\n", extrapolated);
  os << line;
  return os.str();
}

namespace {

// Gaussian times a polynomial with no rotational symmetry, scaled to `width`.
cplx test_psi(const Vec3& p, double width) {
  const double x = p[0] / width, y = p[1] / width, z = p[2] / width;
  const cplx poly(1.0 + 0.3 * x + 0.1 * x * y + 0.2 * z, -0.2 * y + 0.15 * x * x - 0.1 * y * z);
  return poly * std::exp(-0.5 * (x * x + y * y + z * z));
}

double trap(const Vec3& r) { return 0.5 * (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]); }

CommutatorProblem test_problem(int dim, double width) {
  if (!(width > 0.0)) throw InputError("test state width must be positive");
  CommutatorProblem p;
  p.dim = dim;
  p.half_width = 7.5 * width;
  p.V = trap;
  p.psi = [width](const Vec3& r) { return test_psi(r, width); };
  return p;
}

}  // namespace

CommutatorProblem nice_gauge_problem(const GaugeProfiles& profiles, int dim, double width) {
  auto p = test_problem(dim, width);
  p.A = [profiles](const Vec3& r) { return vector_potential(profiles, r); };
  p.label = profiles.to_string();
  return p;
}

CommutatorProblem landau_problem(double b, int dim, double width) {
  auto p = test_problem(dim, width);
  p.A = [b](const Vec3& r) { return landau_potential(b, r); };
  std::ostringstream os;
  os << "landau A=(0, " << b << "*x, 0)";
  p.label = os.str();
  return p;
}

}  // namespace magmetric::gauge
