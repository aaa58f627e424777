#pragma once

#include <span>
#include <vector>

namespace magmetric::numerics {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;    // ascending
  std::vector<double> weights;
  std::vector<double> barycentric;  // barycentric interpolation weights for `nodes`
};

const GaussLegendreRule& gauss_legendre(int order);

/// Composite Gauss-Legendre quadrature on [0, r_max].
///
/// Panels are contiguous intervals given by `breakpoints()`; each carries the
/// same number of nodes. A sampled function on the grid is treated as a
/// piecewise polynomial (one interpolant per panel), which is how profiles
/// are evaluated off-node and how two grids are brought to a common footing.
class RadialGrid {
 public:
  RadialGrid() = default;

  /// Uniform panels.
  static RadialGrid composite(double r_max, int panels, int order);
  /// Arbitrary strictly increasing breakpoints starting at 0.
  static RadialGrid from_breakpoints(std::vector<double> breakpoints, int order);
  /// Union of the breakpoints of `a` and `b` (up to the larger r_max).
  static RadialGrid merged(const RadialGrid& a, const RadialGrid& b);

  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  std::span<const double> breakpoints() const { return breaks_; }
  std::size_t size() const { return nodes_.size(); }
  int order() const { return order_; }
  int panels() const { return static_cast<int>(breaks_.size()) - 1; }
  double r_max() const { return breaks_.empty() ? 0.0 : breaks_.back(); }

  /// Panel index containing r, or -1 outside [0, r_max].
  int panel_of(double r) const;

  /// Evaluate the panel interpolant of `values` at r; zero beyond r_max.
  double interpolate(std::span<const double> values, double r) const;

  /// Sample `fn` at every node.
  template <class F>
  std::vector<double> sample(F&& fn) const {
    std::vector<double> out(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) out[i] = fn(nodes_[i]);
    return out;
  }

  bool same_as(const RadialGrid& other) const;

 private:
  std::vector<double> breaks_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  int order_ = 0;
};

/// Sum of w_i * values_i in node order. Throws InputError on length mismatch.
double integrate_radial(std::span<const double> values, const RadialGrid& grid);

}  // namespace magmetric::numerics
