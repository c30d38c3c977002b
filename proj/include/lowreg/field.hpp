#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lowreg/grid.hpp"

namespace lowreg {

using complexd = std::complex<double>;

/// Complex grid function stored by its Fourier coefficients: the field equals
/// sum_k c_k exp(i k.x) over the retained modes. Physical samples are a
/// derived view (see to_fourier/from_fourier). Fields are value types; all
/// operations on them return new fields.
class Field {
public:
  explicit Field(GridPtr grid)
      : grid_(std::move(grid)),
        coeffs_(static_cast<std::size_t>(grid_->size())) {}

  Field(GridPtr grid, std::vector<complexd> coeffs)
      : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {
    if (static_cast<std::int64_t>(coeffs_.size()) != grid_->size())
      throw std::invalid_argument("Field: coefficient count does not match grid size");
  }

  const GridPtr& grid() const { return grid_; }
  std::int64_t size() const { return grid_->size(); }

  std::span<const complexd> coeffs() const { return coeffs_; }
  std::span<complexd> coeffs() { return coeffs_; }

  const complexd& operator[](std::int64_t i) const {
    return coeffs_[static_cast<std::size_t>(i)];
  }
  complexd& operator[](std::int64_t i) {
    return coeffs_[static_cast<std::size_t>(i)];
  }

private:
  GridPtr grid_;
  std::vector<complexd> coeffs_;
};

inline void require_same_grid(const Field& a, const Field& b) {
  if (!(*a.grid() == *b.grid()))
    throw std::invalid_argument("fields live on different grids");
}

} // namespace lowreg
