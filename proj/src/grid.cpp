#include "lowreg/grid.hpp"

#include <stdexcept>

namespace lowreg {

Grid::Grid(int dim, int modes_per_axis) : dim_(dim), modes_(modes_per_axis) {
  if (dim < 1 || dim > 3)
    throw std::invalid_argument("grid dimension must be 1, 2 or 3");
  if (modes_per_axis < 2 || modes_per_axis % 2 != 0)
    throw std::invalid_argument("modes per axis must be even and >= 2");
  size_ = 1;
  for (int a = 0; a < dim_; ++a) size_ *= modes_;
  freq_.resize(static_cast<std::size_t>(modes_));
  for (int i = 0; i < modes_; ++i)
    freq_[static_cast<std::size_t>(i)] = i < modes_ / 2 ? i : i - modes_;
}

void Grid::freq_vector(std::int64_t flat, int* k) const {
  for (int ax = dim_ - 1; ax >= 0; --ax) {
    k[ax] = freq(static_cast<int>(flat % modes_));
    flat /= modes_;
  }
}

double Grid::ksq(std::int64_t flat) const {
  double s = 0.0;
  for (int ax = dim_ - 1; ax >= 0; --ax) {
    const double f = static_cast<double>(freq(static_cast<int>(flat % modes_)));
    flat /= modes_;
    s += f * f;
  }
  return s;
}

std::int64_t Grid::flat_index(const int* k) const {
  // Array index i carries frequency i mod K, so reducing k mod K into
  // [0, K) both selects in-range modes and folds aliased ones.
  std::int64_t flat = 0;
  for (int ax = 0; ax < dim_; ++ax) {
    int idx = k[ax] % modes_;
    if (idx < 0) idx += modes_;
    flat = flat * modes_ + idx;
  }
  return flat;
}

GridPtr make_grid(int dim, int modes_per_axis) {
  return std::make_shared<const Grid>(dim, modes_per_axis);
}

} // namespace lowreg
