#pragma once

#include <span>
#include <vector>

#include "lowreg/field.hpp"

namespace lowreg {

/// Transform physical samples (row-major over a d-dim grid of K^d points) to
/// Fourier coefficients with the convention u(x) = sum_k c_k exp(i k.x),
/// i.e. forward DFT scaled by 1/N. Inverse of from_fourier.
Field to_fourier(std::span<const complexd> samples, GridPtr grid);

/// Evaluate the field at the grid points (unscaled inverse DFT).
std::vector<complexd> from_fourier(const Field& f);

/// In-place transforms on raw buffers. Plans are cached per (dim, K) behind a
/// mutex; execution is reentrant, so concurrent transforms are safe.
void fft_forward_inplace(const Grid& grid, complexd* data);  // includes 1/N
void fft_inverse_inplace(const Grid& grid, complexd* data);

} // namespace lowreg
