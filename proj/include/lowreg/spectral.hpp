#pragma once

#include <vector>

#include "lowreg/fft.hpp"
#include "lowreg/field.hpp"

namespace lowreg {

/// Pseudo-spectral product: both factors are evaluated in physical space,
/// multiplied pointwise and transformed back. Aliasing of out-of-range modes
/// is the default (plain pseudo-spectral method); enabling dealiasing routes
/// every product through zero-padded transforms on a 3K/2 grid, which removes
/// aliasing for binary products.
Field pointwise_mul(const Field& a, const Field& b);

/// Complex conjugate of the field (index reversal + conjugation in Fourier
/// space; no transform involved).
Field conj_field(const Field& a);

/// Spectral gradient: component l has coefficients (i k_l) c_k.
std::vector<Field> gradient(const Field& a);

/// Discrete fractional Sobolev norm sqrt(sum_k (1 + |k|^(2r)) |c_k|^2).
/// Note the weight at r = 0 is 2 for every mode (including k = 0), i.e.
/// sqrt(2) times the plain l2 coefficient norm.
double sobolev_norm(const Field& a, double r);

// Linear field algebra (coefficient-wise).
Field add(const Field& a, const Field& b);
Field sub(const Field& a, const Field& b);
Field scaled(const Field& a, complexd alpha);

inline Field operator+(const Field& a, const Field& b) { return add(a, b); }
inline Field operator-(const Field& a, const Field& b) { return sub(a, b); }
inline Field operator*(complexd alpha, const Field& a) { return scaled(a, alpha); }

/// Diagnostic 2/3-rule dealiasing toggle for pointwise products (default off).
void set_dealiasing(bool enabled);
bool dealiasing_enabled();

} // namespace lowreg
