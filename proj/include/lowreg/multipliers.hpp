#pragma once

#include <vector>

#include "lowreg/field.hpp"

namespace lowreg {

/// phi1(z) = (exp(z) - 1)/z, entire; evaluated by Taylor series below
/// |z| = 1e-2 to avoid cancellation, direct formula above.
complexd phi1_scalar(complexd z);

/// phi2(z) = (exp(z) - phi1(z))/z = 1/2 + z/3 + ... (same switch radius).
/// Satisfies z*phi2(z) + phi1(z) = exp(z).
complexd phi2_scalar(complexd z);

enum class PhiKind { Phi1, Phi2 };

/// Free Schroedinger flow exp(i t Laplacian): coefficient at k is multiplied
/// by exp(-i t |k|^2). Unitary on every Sobolev norm; group law in t.
Field apply_exp_laplacian(const Field& a, double t);

/// phi(c * (-i tau Laplacian)): coefficient-wise multiplication by
/// phi(i c tau |k|^2).
Field apply_phi(PhiKind kind, const Field& a, double c, double tau);

/// Smoothing filter phi1(i tau |grad|): symbol phi1(i tau |k|), which is
/// 1 + O(tau |k|).
Field apply_filter_psi(const Field& a, double tau);

// Precomputed symbol tables (used by the schemes to avoid per-step rebuilds).
std::vector<complexd> exp_laplacian_table(const Grid& grid, double t);
std::vector<complexd> phi_table(PhiKind kind, const Grid& grid, double c, double tau);
std::vector<complexd> filter_psi_table(const Grid& grid, double tau);
Field apply_table(const Field& a, const std::vector<complexd>& table);

} // namespace lowreg
