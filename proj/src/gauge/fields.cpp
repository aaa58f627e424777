#include "magmetric/gauge/fields.hpp"

#include <algorithm>
#include <string>

#include "magmetric/errors.hpp"

namespace magmetric::gauge {

CartesianGrid::CartesianGrid(int dim, int n, double half_width) : dim_(dim), n_(n), half_(half_width) {
  if (dim != 2 && dim != 3) throw InputError("Cartesian grid must be 2D or 3D");
  if (n < 5) throw InputError("Cartesian grid needs at least 5 points per axis");
  if (!(half_width > 0.0)) throw InputError("Cartesian grid half width must be positive");
  h_ = 2.0 * half_width / (n - 1);
  size_ = static_cast<std::size_t>(n) * n * (dim == 3 ? n : 1);
}

double CartesianGrid::cell() const { return dim_ == 3 ? h_ * h_ * h_ : h_ * h_; }

Vec3 CartesianGrid::point(std::size_t idx) const {
  const int i = static_cast<int>(idx % n_);
  const int j = static_cast<int>((idx / n_) % n_);
  const int k = static_cast<int>(idx / (static_cast<std::size_t>(n_) * n_));
  return {coord(i), coord(j), dim_ == 3 ? coord(k) : 0.0};
}

int CartesianGrid::depth(std::size_t idx) const {
  const int i = static_cast<int>(idx % n_);
  const int j = static_cast<int>((idx / n_) % n_);
  int d = std::min({i, j, n_ - 1 - i, n_ - 1 - j});
  if (dim_ == 3) {
    const int k = static_cast<int>(idx / (static_cast<std::size_t>(n_) * n_));
    d = std::min({d, k, n_ - 1 - k});
  }
  return d;
}

void require_same_grid(const CartesianGrid& a, const CartesianGrid& b, const char* what) {
  if (!(a == b)) throw InputError(std::string(what) + ": fields live on different grids");
}

}  // namespace magmetric::gauge
