#pragma once

#include <complex>
#include <cstdint>
#include <span>

#include "lowreg/grid.hpp"

namespace lowreg::kernels {

using complexd = std::complex<double>;

/// All mode-indexed inner loops exist in a serial and an OpenMP variant.
/// The serial variant is the reference implementation; the parallel one must
/// reproduce it bitwise (pointwise loops trivially, reductions via a fixed
/// chunk decomposition that is independent of the thread count).
enum class ExecMode { Serial, Parallel };

void set_exec_mode(ExecMode mode);
ExecMode exec_mode();

/// True when a loop over n elements should use the OpenMP variant: parallel
/// mode is active and n is large enough to amortize the fork/join overhead.
bool use_parallel(std::int64_t n);

/// out[i] = a[i] * b[i]
void multiply(std::span<const complexd> a, std::span<const complexd> b,
              std::span<complexd> out);

/// out[i] = alpha*a[i] + beta*b[i]
void linear_combination(complexd alpha, std::span<const complexd> a,
                        complexd beta, std::span<const complexd> b,
                        std::span<complexd> out);

/// inout[i] *= table[i]
void apply_table(std::span<const complexd> table, std::span<complexd> inout);

/// out[i] = table[i] * in[i]
void apply_table_to(std::span<const complexd> table,
                    std::span<const complexd> in, std::span<complexd> out);

/// Fourier coefficients of the complex conjugate: out at frequency k is
/// conj(in at -k), with -K/2 self-paired.
void conjugate_coeffs(const Grid& grid, std::span<const complexd> in,
                      std::span<complexd> out);

/// out[i] = conj(in[i])  (physical-space conjugation)
void conjugate_pointwise(std::span<const complexd> in, std::span<complexd> out);

/// out[i] = |in[i]|^2 (as a complex number with zero imaginary part)
void abs_squared(std::span<const complexd> in, std::span<complexd> out);

/// sum_i w[i] * |c[i]|^2, accumulated over a fixed number of chunks so the
/// result does not depend on the execution mode or thread count.
double weighted_norm_sq(std::span<const double> weights,
                        std::span<const complexd> coeffs);

/// sum_i |c[i]|^2 with the same fixed-chunk accumulation.
double norm_sq(std::span<const complexd> coeffs);

bool all_finite(std::span<const complexd> coeffs);

/// w[i] = 1 + |k_i|^(2r)
void sobolev_weight_table(const Grid& grid, double r, std::span<double> out);

/// table[i] = exp(-i * t * |k_i|^2), the diagonal symbol of exp(i t Laplacian).
void exp_laplacian_table(const Grid& grid, double t, std::span<complexd> out);

/// table[i] = (i * k_axis) for spectral differentiation along one axis.
void gradient_table(const Grid& grid, int axis, std::span<complexd> out);

/// u[i] *= exp(-i * dt * (V[i] + |u[i]|^2 * phi1(2*dt*Im V[i]))), the exact
/// pointwise flow of i u_t = V u + |u|^2 u over dt. For real V this is the
/// plain phase rotation exp(-i*dt*(V+|u|^2)).
void pointwise_kick(std::span<const complexd> v_phys, double dt,
                    std::span<complexd> u_phys);

} // namespace lowreg::kernels
