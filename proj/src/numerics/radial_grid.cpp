#include "magmetric/numerics/radial_grid.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "magmetric/errors.hpp"

namespace magmetric::numerics {

namespace {

GaussLegendreRule build_rule(int order) {
  GaussLegendreRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  // Newton on P_n from the Chebyshev-like initial guess.
  for (int i = 0; i < order; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (order == 1) p0 = 1.0, p1 = x;
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute derivative at the converged node for the weight.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= order; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = order * (x * p1 - p0) / (x * x - 1.0);
    rule.nodes[order - 1 - i] = x;
    rule.weights[order - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  // Barycentric weights for Gauss points: (-1)^j sqrt((1 - x_j^2) w_j).
  rule.barycentric.resize(order);
  for (int j = 0; j < order; ++j) {
    const double x = rule.nodes[j];
    rule.barycentric[j] = ((j % 2) ? -1.0 : 1.0) * std::sqrt((1.0 - x * x) * rule.weights[j]);
  }
  return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(int order) {
  if (order < 1 || order > 128) throw InputError("Gauss-Legendre order must be in [1, 128]");
  static std::mutex mutex;
  static std::map<int, GaussLegendreRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, build_rule(order)).first;
  return it->second;
}

RadialGrid RadialGrid::composite(double r_max, int panels, int order) {
  if (!(r_max > 0.0) || panels < 1) throw InputError("composite grid needs r_max > 0 and panels >= 1");
  std::vector<double> breaks(panels + 1);
  for (int p = 0; p <= panels; ++p) breaks[p] = r_max * p / panels;
  breaks.back() = r_max;
  return from_breakpoints(std::move(breaks), order);
}

RadialGrid RadialGrid::from_breakpoints(std::vector<double> breakpoints, int order) {
  if (breakpoints.size() < 2 || breakpoints.front() != 0.0)
    throw InputError("breakpoints must start at 0 and define at least one panel");
  for (std::size_t i = 1; i < breakpoints.size(); ++i)
    if (!(breakpoints[i] > breakpoints[i - 1])) throw InputError("breakpoints must be strictly increasing");

  const auto& rule = gauss_legendre(order);
  RadialGrid grid;
  grid.order_ = order;
  grid.breaks_ = std::move(breakpoints);
  const int panels = grid.panels();
  grid.nodes_.reserve(static_cast<std::size_t>(panels) * order);
  grid.weights_.reserve(static_cast<std::size_t>(panels) * order);
  for (int p = 0; p < panels; ++p) {
    const double a = grid.breaks_[p], b = grid.breaks_[p + 1];
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (int j = 0; j < order; ++j) {
      grid.nodes_.push_back(mid + half * rule.nodes[j]);
      grid.weights_.push_back(half * rule.weights[j]);
    }
  }
  return grid;
}

RadialGrid RadialGrid::merged(const RadialGrid& a, const RadialGrid& b) {
  if (a.same_as(b)) return a;
  std::vector<double> breaks(a.breaks_);
  breaks.insert(breaks.end(), b.breaks_.begin(), b.breaks_.end());
  std::sort(breaks.begin(), breaks.end());
  // Drop duplicates and slivers narrower than rounding noise.
  std::vector<double> unique;
  unique.reserve(breaks.size());
  const double scale = std::max(a.r_max(), b.r_max());
  for (double x : breaks) {
    if (unique.empty() || x - unique.back() > 1e-13 * scale) unique.push_back(x);
  }
  unique.front() = 0.0;
  return from_breakpoints(std::move(unique), std::max(a.order_, b.order_));
}

int RadialGrid::panel_of(double r) const {
  if (breaks_.empty() || r < 0.0 || r > breaks_.back()) return -1;
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), r);
  int p = static_cast<int>(it - breaks_.begin()) - 1;
  return std::min(p, panels() - 1);
}

double RadialGrid::interpolate(std::span<const double> values, double r) const {
  if (values.size() != nodes_.size()) throw InputError("interpolate: values do not match grid");
  const int p = panel_of(r);
  if (p < 0) return 0.0;
  const auto& rule = gauss_legendre(order_);
  const double a = breaks_[p], b = breaks_[p + 1];
  const double x = (2.0 * r - a - b) / (b - a);
  const std::size_t base = static_cast<std::size_t>(p) * order_;
  double num = 0.0, den = 0.0;
  for (int j = 0; j < order_; ++j) {
    const double d = x - rule.nodes[j];
    if (d == 0.0) return values[base + j];
    const double t = rule.barycentric[j] / d;
    num += t * values[base + j];
    den += t;
  }
  return num / den;
}

bool RadialGrid::same_as(const RadialGrid& other) const {
  return order_ == other.order_ && breaks_ == other.breaks_;
}

double integrate_radial(std::span<const double> values, const RadialGrid& grid) {
  if (values.size() != grid.size())
    throw InputError("integrate_radial: " + std::to_string(values.size()) + " values for " +
                     std::to_string(grid.size()) + " nodes");
  const auto w = grid.weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) sum += w[i] * values[i];
  return sum;
}

}  // namespace magmetric::numerics
