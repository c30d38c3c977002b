#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace lowreg {

/// Uniform periodic grid on [0, 2*pi)^d, with the same (even) number of
/// Fourier modes K per axis. Storage is row-major over axes; on each axis,
/// array index i carries the integer frequency i for i < K/2 and i - K for
/// i >= K/2 (FFTW layout), so the retained frequencies are [-K/2, K/2 - 1].
class Grid {
public:
  Grid(int dim, int modes_per_axis);

  int dim() const { return dim_; }
  int modes() const { return modes_; }
  std::int64_t size() const { return size_; }

  /// Integer frequency carried by array index i on any axis.
  int freq(int index) const { return freq_[static_cast<std::size_t>(index)]; }
  const std::vector<int>& frequencies() const { return freq_; }

  /// Per-axis frequencies of a flat row-major index (k must hold dim() ints).
  void freq_vector(std::int64_t flat, int* k) const;

  /// Squared Euclidean length |k|^2 of the multi-index at a flat position.
  double ksq(std::int64_t flat) const;

  /// Flat index of a frequency vector; frequencies are reduced mod K into
  /// [-K/2, K/2 - 1] first, so aliased indices fold onto the grid.
  std::int64_t flat_index(const int* k) const;

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.dim_ == b.dim_ && a.modes_ == b.modes_;
  }

private:
  int dim_;
  int modes_;
  std::int64_t size_;
  std::vector<int> freq_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(int dim, int modes_per_axis);

} // namespace lowreg
