#include "lowreg/kernels.hpp"

#include <atomic>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace lowreg::kernels {

namespace {

std::atomic<ExecMode> g_mode{
#ifdef _OPENMP
    ExecMode::Parallel
#else
    ExecMode::Serial
#endif
};

// Reductions accumulate over a fixed number of chunks, each summed serially
// and combined in index order, so serial and parallel runs (any thread count)
// produce bitwise identical sums.
constexpr int kChunks = 64;

inline std::int64_t chunk_begin(std::int64_t n, int c) {
  return n * c / kChunks;
}

// Real phi1: (exp(x) - 1)/x, stable through x = 0 via expm1.
inline double phi1_real(double x) {
  if (x == 0.0) return 1.0;
  return std::expm1(x) / x;
}

} // namespace

void set_exec_mode(ExecMode mode) { g_mode.store(mode); }
ExecMode exec_mode() { return g_mode.load(); }

bool use_parallel(std::int64_t n) {
  // Fork/join costs dwarf the loop body below a few thousand elements.
  constexpr std::int64_t kCutoff = 1 << 13;
  return exec_mode() == ExecMode::Parallel && n >= kCutoff;
}

void multiply(std::span<const complexd> a, std::span<const complexd> b,
              std::span<complexd> out) {
  const std::int64_t n = static_cast<std::int64_t>(out.size());
  if (use_parallel(n)) {
#pragma omp parallel for
    for (std::int64_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
  } else {
    for (std::int64_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
  }
}

void linear_combination(complexd alpha, std::span<const complexd> a,
                        complexd beta, std::span<const complexd> b,
                        std::span<complexd> out) {
  const std::int64_t n = static_cast<std::int64_t>(out.size());
  if (use_parallel(n)) {
#pragma omp parallel for
    for (std::int64_t i = 0; i < n; ++i) out[i] = alpha * a[i] + beta * b[i];
  } else {
    for (std::int64_t i = 0; i < n; ++i) out[i] = alpha * a[i] + beta * b[i];
  }
}

void apply_table(std::span<const complexd> table, std::span<complexd> inout) {
  const std::int64_t n = static_cast<std::int64_t>(inout.size());
  if (use_parallel(n)) {
#pragma omp parallel for
    for (std::int64_t i = 0; i < n; ++i) inout[i] *= table[i];
  } else {
    for (std::int64_t i = 0; i < n; ++i) inout[i] *= table[i];
  }
}

void apply_table_to(std::span<const complexd> table,
                    std::span<const complexd> in, std::span<complexd> out) {
  const std::int64_t n = static_cast<std::int64_t>(out.size());
  if (use_parallel(n)) {
#pragma omp parallel for
    for (std::int64_t i = 0; i < n; ++i) out[i] = table[i] * in[i];
  } else {
    for (std::int64_t i = 0; i < n; ++i) out[i] = table[i] * in[i];
  }
}

void conjugate_coeffs(const Grid& grid, std::span<const complexd> in,
                      std::span<complexd> out) {
  const int d = grid.dim();
  const int K = grid.modes();
  const std::int64_t n = grid.size();
  // Frequency k maps to -k mod K on every axis: index i -> (K - i) mod K.
  auto reversed = [&](std::int64_t flat) {
    std::int64_t r = 0;
    std::int64_t stride = 1;
    for (int ax = 0; ax < d; ++ax) {
      const std::int64_t i = flat % K;
      flat /= K;
      r += ((K - i) % K) * stride;
      stride *= K;
    }
    return r;
  };
  if (use_parallel(n)) {
#pragma omp parallel for
    for (std::int64_t i = 0; i < n; ++i) out[i] = std::conj(in[reversed(i)]);
  } else {
    for (std::int64_t i = 0; i < n; ++i) out[i] = std::conj(in[reversed(i)]);
  }
}

void conjugate_pointwise(std::span<const complexd> in, std::span<complexd> out) {
  const std::int64_t n = static_cast<std::int64_t>(out.size());
  if (use_parallel(n)) {
#pragma omp parallel for
    for (std::int64_t i = 0; i < n; ++i) out[i] = std::conj(in[i]);
  } else {
    for (std::int64_t i = 0; i < n; ++i) out[i] = std::conj(in[i]);
  }
}

void abs_squared(std::span<const complexd> in, std::span<complexd> out) {
  const std::int64_t n = static_cast<std::int64_t>(out.size());
  if (use_parallel(n)) {
#pragma omp parallel for
    for (std::int64_t i = 0; i < n; ++i) out[i] = complexd(std::norm(in[i]), 0.0);
  } else {
    for (std::int64_t i = 0; i < n; ++i) out[i] = complexd(std::norm(in[i]), 0.0);
  }
}

double weighted_norm_sq(std::span<const double> weights,
                        std::span<const complexd> coeffs) {
  const std::int64_t n = static_cast<std::int64_t>(coeffs.size());
  double partial[kChunks] = {};
  if (use_parallel(n)) {
#pragma omp parallel for
    for (int c = 0; c < kChunks; ++c) {
      double s = 0.0;
      for (std::int64_t i = chunk_begin(n, c); i < chunk_begin(n, c + 1); ++i)
        s += weights[i] * std::norm(coeffs[i]);
      partial[c] = s;
    }
  } else {
    for (int c = 0; c < kChunks; ++c) {
      double s = 0.0;
      for (std::int64_t i = chunk_begin(n, c); i < chunk_begin(n, c + 1); ++i)
        s += weights[i] * std::norm(coeffs[i]);
      partial[c] = s;
    }
  }
  double total = 0.0;
  for (int c = 0; c < kChunks; ++c) total += partial[c];
  return total;
}

double norm_sq(std::span<const complexd> coeffs) {
  const std::int64_t n = static_cast<std::int64_t>(coeffs.size());
  double partial[kChunks] = {};
  if (use_parallel(n)) {
#pragma omp parallel for
    for (int c = 0; c < kChunks; ++c) {
      double s = 0.0;
      for (std::int64_t i = chunk_begin(n, c); i < chunk_begin(n, c + 1); ++i)
        s += std::norm(coeffs[i]);
      partial[c] = s;
    }
  } else {
    for (int c = 0; c < kChunks; ++c) {
      double s = 0.0;
      for (std::int64_t i = chunk_begin(n, c); i < chunk_begin(n, c + 1); ++i)
        s += std::norm(coeffs[i]);
      partial[c] = s;
    }
  }
  double total = 0.0;
  for (int c = 0; c < kChunks; ++c) total += partial[c];
  return total;
}

bool all_finite(std::span<const complexd> coeffs) {
  return std::isfinite(norm_sq(coeffs));
}

void sobolev_weight_table(const Grid& grid, double r, std::span<double> out) {
  const std::int64_t n = grid.size();
  // std::pow(0, 0) == 1, so the r = 0 weight is 2 for every mode.
  if (use_parallel(n)) {
#pragma omp parallel for
    for (std::int64_t i = 0; i < n; ++i)
      out[i] = 1.0 + std::pow(grid.ksq(i), r);
  } else {
    for (std::int64_t i = 0; i < n; ++i)
      out[i] = 1.0 + std::pow(grid.ksq(i), r);
  }
}

void exp_laplacian_table(const Grid& grid, double t, std::span<complexd> out) {
  const std::int64_t n = grid.size();
  if (use_parallel(n)) {
#pragma omp parallel for
    for (std::int64_t i = 0; i < n; ++i)
      out[i] = std::polar(1.0, -t * grid.ksq(i));
  } else {
    for (std::int64_t i = 0; i < n; ++i)
      out[i] = std::polar(1.0, -t * grid.ksq(i));
  }
}

void gradient_table(const Grid& grid, int axis, std::span<complexd> out) {
  const int d = grid.dim();
  if (axis < 0 || axis >= d) throw std::invalid_argument("gradient axis out of range");
  const int K = grid.modes();
  const std::int64_t n = grid.size();
  std::int64_t stride = 1;
  for (int a = axis + 1; a < d; ++a) stride *= K;
  if (use_parallel(n)) {
#pragma omp parallel for
    for (std::int64_t i = 0; i < n; ++i) {
      const int idx = static_cast<int>((i / stride) % K);
      out[i] = complexd(0.0, static_cast<double>(grid.freq(idx)));
    }
  } else {
    for (std::int64_t i = 0; i < n; ++i) {
      const int idx = static_cast<int>((i / stride) % K);
      out[i] = complexd(0.0, static_cast<double>(grid.freq(idx)));
    }
  }
}

void pointwise_kick(std::span<const complexd> v_phys, double dt,
                    std::span<complexd> u_phys) {
  const std::int64_t n = static_cast<std::int64_t>(u_phys.size());
  auto kick = [&](std::int64_t i) {
    const complexd v = v_phys[i];
    const double amp2 = std::norm(u_phys[i]);
    // Exact flow: u * exp(-i dt V - i amp2 dt phi1(2 dt Im V)); the phi1
    // factor accounts for the modulus drift when Im V != 0.
    const complexd arg = complexd(0.0, -dt) * v +
        complexd(0.0, -amp2 * dt * phi1_real(2.0 * dt * v.imag()));
    u_phys[i] *= std::exp(arg);
  };
  if (use_parallel(n)) {
#pragma omp parallel for
    for (std::int64_t i = 0; i < n; ++i) kick(i);
  } else {
    for (std::int64_t i = 0; i < n; ++i) kick(i);
  }
}

} // namespace lowreg::kernels
