#include "lowreg/spectral.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "lowreg/kernels.hpp"

namespace lowreg {

namespace {

std::atomic<bool> g_dealias{false};

// Zero-padded product on a grid with >= 3K/2 modes per axis, which keeps
// binary products alias-free in the retained window [-K/2, K/2-1].
Field padded_mul(const Field& a, const Field& b) {
  const Grid& g = *a.grid();
  const int K = g.modes();
  int M = 3 * K / 2;
  if (M % 2 != 0) ++M;
  GridPtr padded = make_grid(g.dim(), M);

  auto embed = [&](const Field& f) {
    std::vector<complexd> out(static_cast<std::size_t>(padded->size()));
    int k[3];
    for (std::int64_t i = 0; i < g.size(); ++i) {
      g.freq_vector(i, k);
      out[static_cast<std::size_t>(padded->flat_index(k))] = f[i];
    }
    fft_inverse_inplace(*padded, out.data());
    return out;
  };

  std::vector<complexd> pa = embed(a);
  const std::vector<complexd> pb = embed(b);
  kernels::multiply(pa, pb, pa);
  fft_forward_inplace(*padded, pa.data());

  Field result(a.grid());
  int k[3];
  for (std::int64_t i = 0; i < g.size(); ++i) {
    g.freq_vector(i, k);
    result[i] = pa[static_cast<std::size_t>(padded->flat_index(k))];
  }
  return result;
}

} // namespace

void set_dealiasing(bool enabled) { g_dealias.store(enabled); }
bool dealiasing_enabled() { return g_dealias.load(); }

Field pointwise_mul(const Field& a, const Field& b) {
  require_same_grid(a, b);
  if (dealiasing_enabled()) return padded_mul(a, b);
  std::vector<complexd> pa = from_fourier(a);
  const std::vector<complexd> pb = from_fourier(b);
  kernels::multiply(pa, pb, pa);
  fft_forward_inplace(*a.grid(), pa.data());
  return Field(a.grid(), std::move(pa));
}

Field conj_field(const Field& a) {
  Field out(a.grid());
  kernels::conjugate_coeffs(*a.grid(), a.coeffs(), out.coeffs());
  return out;
}

std::vector<Field> gradient(const Field& a) {
  const Grid& g = *a.grid();
  std::vector<Field> out;
  out.reserve(static_cast<std::size_t>(g.dim()));
  std::vector<complexd> table(static_cast<std::size_t>(g.size()));
  for (int axis = 0; axis < g.dim(); ++axis) {
    kernels::gradient_table(g, axis, table);
    Field component(a.grid());
    kernels::apply_table_to(table, a.coeffs(), component.coeffs());
    out.push_back(std::move(component));
  }
  return out;
}

double sobolev_norm(const Field& a, double r) {
  if (r < 0.0) throw std::domain_error("sobolev_norm: r must be >= 0");
  std::vector<double> weights(static_cast<std::size_t>(a.size()));
  kernels::sobolev_weight_table(*a.grid(), r, weights);
  return std::sqrt(kernels::weighted_norm_sq(weights, a.coeffs()));
}

Field add(const Field& a, const Field& b) {
  require_same_grid(a, b);
  Field out(a.grid());
  kernels::linear_combination(1.0, a.coeffs(), 1.0, b.coeffs(), out.coeffs());
  return out;
}

Field sub(const Field& a, const Field& b) {
  require_same_grid(a, b);
  Field out(a.grid());
  kernels::linear_combination(1.0, a.coeffs(), -1.0, b.coeffs(), out.coeffs());
  return out;
}

Field scaled(const Field& a, complexd alpha) {
  Field out(a.grid());
  kernels::linear_combination(alpha, a.coeffs(), 0.0, a.coeffs(), out.coeffs());
  return out;
}

} // namespace lowreg
