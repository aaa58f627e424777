#include "oracles/magnetic_fd.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>

namespace oracle {

namespace {

using cd = std::complex<double>;

struct Hamiltonian {
  int n;
  double h, half_width, omega0, b;
  double coord(int i) const { return -half_width + (i + 1) * h; }

  // Interior points only; Dirichlet zero outside.
  void apply(const std::vector<cd>& in, std::vector<cd>& out) const {
    const double kin = 0.5 / (h * h);
    auto at = [&](int i, int j) -> cd {
      if (i < 0 || j < 0 || i >= n || j >= n) return 0.0;
      return in[static_cast<std::size_t>(i) * n + j];
    };
    const cd I(0.0, 1.0);
    for (int i = 0; i < n; ++i) {
      const double x = coord(i);
      for (int j = 0; j < n; ++j) {
        const double y = coord(j);
        const double ax = -0.5 * b * y, ay = 0.5 * b * x;
        const cd c = at(i, j);
        const cd lap = at(i + 1, j) + at(i - 1, j) + at(i, j + 1) + at(i, j - 1) - 4.0 * c;
        const cd dx = (at(i + 1, j) - at(i - 1, j)) / (2.0 * h);
        const cd dy = (at(i, j + 1) - at(i, j - 1)) / (2.0 * h);
        out[static_cast<std::size_t>(i) * n + j] = -kin * lap - I * (ax * dx + ay * dy) +
                                                   (0.5 * (ax * ax + ay * ay) + 0.5 * omega0 * omega0 * (x * x + y * y)) * c;
      }
    }
  }
};

}  // namespace

std::vector<double> magnetic_fd_levels(double omega0, double omega_c, double half_width, int n, int count) {
  const Hamiltonian H{n, 2.0 * half_width / (n + 1), half_width, omega0, omega_c};
  const std::size_t dim = static_cast<std::size_t>(n) * n;
  const int steps = std::min<int>(220, static_cast<int>(dim));

  std::vector<std::vector<cd>> basis;
  basis.reserve(steps + 1);
  std::mt19937_64 rng(12345);
  std::normal_distribution<double> g;
  std::vector<cd> v(dim);
  for (auto& x : v) x = cd(g(rng), g(rng));
  auto norm = [](const std::vector<cd>& a) {
    double s = 0;
    for (auto& x : a) s += std::norm(x);
    return std::sqrt(s);
  };
  double nv = norm(v);
  for (auto& x : v) x /= nv;
  basis.push_back(v);

  std::vector<double> alpha, beta;
  std::vector<cd> w(dim);
  for (int k = 0; k < steps; ++k) {
    H.apply(basis[k], w);
    cd a = 0;
    for (std::size_t i = 0; i < dim; ++i) a += std::conj(basis[k][i]) * w[i];
    alpha.push_back(a.real());
    // Full reorthogonalization (twice) against the whole basis.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) {
        cd p = 0;
        for (std::size_t i = 0; i < dim; ++i) p += std::conj(q[i]) * w[i];
        for (std::size_t i = 0; i < dim; ++i) w[i] -= p * q[i];
      }
    const double b = norm(w);
    if (k + 1 == steps || b < 1e-12) break;
    beta.push_back(b);
    for (auto& x : w) x /= b;
    basis.push_back(w);
  }
  const int m = static_cast<int>(alpha.size());
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) T(i, i) = alpha[i];
  for (int i = 0; i + 1 < m; ++i) T(i, i + 1) = T(i + 1, i) = beta[i];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T, Eigen::EigenvaluesOnly);
  std::vector<double> out;
  for (int i = 0; i < count && i < m; ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

std::vector<double> magnetic_fd_levels_extrapolated(double omega0, double omega_c, double half_width, int n,
                                                    int count) {
  const auto coarse = magnetic_fd_levels(omega0, omega_c, half_width, n, count);
  const auto fine = magnetic_fd_levels(omega0, omega_c, half_width, 2 * n + 1, count);
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) out[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
  return out;
}

}  // namespace oracle
