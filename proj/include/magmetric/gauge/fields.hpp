#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace magmetric::gauge {

using Vec3 = std::array<double, 3>;
using cplx = std::complex<double>;

/// Uniform Cartesian grid on [-L, L]^dim with n points per axis (ends
/// included), spacing h = 2L/(n - 1). In 2D the z coordinate is 0.
class CartesianGrid {
 public:
  CartesianGrid() = default;
  CartesianGrid(int dim, int n, double half_width);

  int dim() const { return dim_; }
  int n() const { return n_; }
  double h() const { return h_; }
  double half_width() const { return half_; }
  std::size_t size() const { return size_; }
  /// Quadrature weight of a node (h^dim).
  double cell() const;

  double coord(int i) const { return -half_ + i * h_; }
  std::size_t index(int i, int j, int k = 0) const {
    return (static_cast<std::size_t>(k) * n_ + static_cast<std::size_t>(j)) * n_ + static_cast<std::size_t>(i);
  }
  Vec3 point(std::size_t idx) const;
  /// Distance in nodes to the nearest face.
  int depth(std::size_t idx) const;

  bool operator==(const CartesianGrid& o) const { return dim_ == o.dim_ && n_ == o.n_ && half_ == o.half_; }

 private:
  int dim_ = 2;
  int n_ = 0;
  double half_ = 0.0;
  double h_ = 0.0;
  std::size_t size_ = 0;
};

struct ScalarField {
  CartesianGrid grid;
  std::vector<double> v;
};

struct ComplexField {
  CartesianGrid grid;
  std::vector<cplx> v;
};

struct VectorField {
  CartesianGrid grid;
  std::array<std::vector<double>, 3> c;  // x, y, z components
};

template <class F>
ScalarField sample_scalar(const CartesianGrid& g, F&& fn) {
  ScalarField out{g, std::vector<double>(g.size())};
  for (std::size_t i = 0; i < g.size(); ++i) out.v[i] = fn(g.point(i));
  return out;
}

template <class F>
ComplexField sample_complex(const CartesianGrid& g, F&& fn) {
  ComplexField out{g, std::vector<cplx>(g.size())};
  for (std::size_t i = 0; i < g.size(); ++i) out.v[i] = fn(g.point(i));
  return out;
}

template <class F>
VectorField sample_vector(const CartesianGrid& g, F&& fn) {
  VectorField out{g, {std::vector<double>(g.size()), std::vector<double>(g.size()), std::vector<double>(g.size())}};
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec3 a = fn(g.point(i));
    for (int k = 0; k < 3; ++k) out.c[k][i] = a[k];
  }
  return out;
}

/// Throws InputError unless both grids are identical.
void require_same_grid(const CartesianGrid& a, const CartesianGrid& b, const char* what);

}  // namespace magmetric::gauge
