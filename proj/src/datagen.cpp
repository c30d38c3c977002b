#include "lowreg/datagen.hpp"

#include <cmath>
#include <stdexcept>

#include "lowreg/kernels.hpp"

namespace lowreg {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

double to_unit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;  // [0, 1)
}

// Zig-zag packed multi-index; depends only on the integer frequencies, never
// on the grid size, so shared modes draw identical amplitudes on every grid.
std::uint64_t mode_key(const int* k, int dim) {
  std::uint64_t key = 0;
  for (int ax = 0; ax < dim; ++ax) {
    const std::uint64_t z = k[ax] >= 0
        ? 2ull * static_cast<std::uint64_t>(k[ax])
        : 2ull * static_cast<std::uint64_t>(-(k[ax] + 1)) + 1ull;
    key |= z << (21 * ax);
  }
  return key;
}

} // namespace

complexd mode_amplitude(std::uint64_t seed, const int* k, int dim) {
  std::uint64_t h = splitmix64(seed ^ 0x8BADF00DCAFEBEEFull);
  h = splitmix64(h ^ mode_key(k, dim));
  return {to_unit(splitmix64(h ^ 1)), to_unit(splitmix64(h ^ 2))};
}

Field random_sobolev_field(const RegularitySpec& spec) {
  if (spec.theta < 0.0)
    throw std::invalid_argument("regularity parameter must be >= 0");
  if (!spec.grid) throw std::invalid_argument("regularity spec has no grid");
  const Grid& g = *spec.grid;
  const std::int64_t n = g.size();
  const double expo = -spec.theta - 0.5;

  Field out(spec.grid);
  auto coeffs = out.coeffs();
  auto fill = [&](std::int64_t i) {
    int k[3];
    g.freq_vector(i, k);
    const double envelope = std::pow(1.0 + std::sqrt(g.ksq(i)), expo);
    coeffs[i] = envelope * mode_amplitude(spec.seed, k, g.dim());
  };
  if (kernels::use_parallel(n)) {
#pragma omp parallel for
    for (std::int64_t i = 0; i < n; ++i) fill(i);
  } else {
    for (std::int64_t i = 0; i < n; ++i) fill(i);
  }
  return out;
}

Field truncated_projection(const Field& a, int k_target) {
  const Grid& g = *a.grid();
  if (k_target < 2 || k_target % 2 != 0 || k_target > g.modes())
    throw std::invalid_argument("truncated_projection: invalid target mode count");
  if (k_target == g.modes()) return a;

  GridPtr coarse = make_grid(g.dim(), k_target);
  Field out(coarse);
  int k[3];
  for (std::int64_t i = 0; i < coarse->size(); ++i) {
    coarse->freq_vector(i, k);
    out[i] = a[g.flat_index(k)];
  }
  return out;
}

} // namespace lowreg
