#include "lowreg/multipliers.hpp"

#include <cmath>

#include "lowreg/kernels.hpp"

namespace lowreg {

namespace {

constexpr double kSeriesRadius = 1e-2;

// exp(z) - 1 without cancellation: the real part uses expm1 and the half
// angle form of cos(y) - 1, so phi1 stays accurate down to the series switch.
complexd cexpm1(complexd z) {
  const double x = z.real(), y = z.imag();
  const double s = std::sin(0.5 * y);
  const double re = std::expm1(x) * std::cos(y) - 2.0 * s * s;
  const double im = std::exp(x) * std::sin(y);
  return {re, im};
}

} // namespace

complexd phi1_scalar(complexd z) {
  if (std::abs(z) < kSeriesRadius) {
    // sum z^n/(n+1)!; nine terms reach 1e-15 absolute error at |z| = 1e-2.
    complexd acc(0.0);
    for (int n = 8; n >= 0; --n) {
      acc = acc * z;
      double fact = 1.0;
      for (int j = 2; j <= n + 1; ++j) fact *= j;
      acc += 1.0 / fact;
    }
    return acc;
  }
  return cexpm1(z) / z;
}

complexd phi2_scalar(complexd z) {
  if (std::abs(z) < kSeriesRadius) {
    // sum (m+1)/(m+2)! z^m = 1/2 + z/3 + z^2/8 + ...
    complexd acc(0.0);
    for (int m = 8; m >= 0; --m) {
      acc = acc * z;
      double fact = 1.0;
      for (int j = 2; j <= m + 2; ++j) fact *= j;
      acc += (m + 1) / fact;
    }
    return acc;
  }
  return (std::exp(z) - phi1_scalar(z)) / z;
}

std::vector<complexd> exp_laplacian_table(const Grid& grid, double t) {
  std::vector<complexd> table(static_cast<std::size_t>(grid.size()));
  kernels::exp_laplacian_table(grid, t, table);
  return table;
}

std::vector<complexd> phi_table(PhiKind kind, const Grid& grid, double c, double tau) {
  std::vector<complexd> table(static_cast<std::size_t>(grid.size()));
  const std::int64_t n = grid.size();
  for (std::int64_t i = 0; i < n; ++i) {
    const complexd z(0.0, c * tau * grid.ksq(i));
    table[static_cast<std::size_t>(i)] =
        kind == PhiKind::Phi1 ? phi1_scalar(z) : phi2_scalar(z);
  }
  return table;
}

std::vector<complexd> filter_psi_table(const Grid& grid, double tau) {
  std::vector<complexd> table(static_cast<std::size_t>(grid.size()));
  const std::int64_t n = grid.size();
  for (std::int64_t i = 0; i < n; ++i)
    table[static_cast<std::size_t>(i)] =
        phi1_scalar(complexd(0.0, tau * std::sqrt(grid.ksq(i))));
  return table;
}

Field apply_table(const Field& a, const std::vector<complexd>& table) {
  Field out(a.grid());
  kernels::apply_table_to(table, a.coeffs(), out.coeffs());
  return out;
}

Field apply_exp_laplacian(const Field& a, double t) {
  return apply_table(a, exp_laplacian_table(*a.grid(), t));
}

Field apply_phi(PhiKind kind, const Field& a, double c, double tau) {
  return apply_table(a, phi_table(kind, *a.grid(), c, tau));
}

Field apply_filter_psi(const Field& a, double tau) {
  return apply_table(a, filter_psi_table(*a.grid(), tau));
}

} // namespace lowreg
