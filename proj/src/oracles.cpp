#include "lowreg/oracles.hpp"

#include <cmath>
#include <stdexcept>

#include "lowreg/multipliers.hpp"
#include "lowreg/spectral.hpp"

namespace lowreg {

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    // Newton iteration on P_n, starting from the Chebyshev-like guess.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    // Map from [-1, 1] to [0, 1].
    rule.nodes[static_cast<std::size_t>(i)] = 0.5 * (1.0 - x);
    rule.weights[static_cast<std::size_t>(i)] =
        1.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

Field oscillatory_integral_oracle(const Field& u, const Field& V, double tau,
                                  int n_quad) {
  require_same_grid(u, V);
  if (n_quad < 2) throw std::invalid_argument("oscillatory_integral_oracle: n_quad must be >= 2");
  constexpr int kPanels = 4;
  const QuadratureRule rule = gauss_legendre(n_quad);
  const Field ubar = conj_field(u);
  const double h = tau / kPanels;

  Field acc(u.grid());
  for (int panel = 0; panel < kPanels; ++panel) {
    for (int q = 0; q < n_quad; ++q) {
      const double zeta =
          h * (panel + rule.nodes[static_cast<std::size_t>(q)]);
      const Field ev = apply_exp_laplacian(u, zeta);
      const Field emvbar = apply_exp_laplacian(ubar, -zeta);
      Field integrand = add(pointwise_mul(V, ev),
                            pointwise_mul(pointwise_mul(ev, ev), emvbar));
      integrand = apply_exp_laplacian(integrand, -zeta);
      acc = add(acc, scaled(integrand,
                            h * rule.weights[static_cast<std::size_t>(q)]));
    }
  }
  return acc;
}

Field lri1_step_convolution_oracle(const Field& u, const Field& V, double tau) {
  require_same_grid(u, V);
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
  const Grid& g = *u.grid();
  const std::int64_t n = g.size();
  const int d = g.dim();

  std::vector<complexd> a(static_cast<std::size_t>(n));
  int k1[3], k2[3], k3[3], kt[3];

  // Potential term: sum over l1 + l2 = k of phi1(i tau l1^2) V_{l1} u_{l2},
  // with the sum folded onto the grid mod K.
  for (std::int64_t i1 = 0; i1 < n; ++i1) {
    g.freq_vector(i1, k1);
    const complexd w = phi1_scalar(complexd(0.0, tau * g.ksq(i1))) * V[i1];
    for (std::int64_t i2 = 0; i2 < n; ++i2) {
      g.freq_vector(i2, k2);
      for (int ax = 0; ax < d; ++ax) kt[ax] = k1[ax] + k2[ax];
      a[static_cast<std::size_t>(g.flat_index(kt))] += w * u[i2];
    }
  }

  // Cubic term: sum over -k1 + k2 + k3 = k of
  // phi1(2 i tau k1^2) conj(u_{k1}) u_{k2} u_{k3}.
  for (std::int64_t i1 = 0; i1 < n; ++i1) {
    g.freq_vector(i1, k1);
    const complexd w =
        phi1_scalar(complexd(0.0, 2.0 * tau * g.ksq(i1))) * std::conj(u[i1]);
    for (std::int64_t i2 = 0; i2 < n; ++i2) {
      g.freq_vector(i2, k2);
      const complexd wu = w * u[i2];
      for (std::int64_t i3 = 0; i3 < n; ++i3) {
        g.freq_vector(i3, k3);
        for (int ax = 0; ax < d; ++ax) kt[ax] = -k1[ax] + k2[ax] + k3[ax];
        a[static_cast<std::size_t>(g.flat_index(kt))] += wu * u[i3];
      }
    }
  }

  Field out(u.grid());
  for (std::int64_t i = 0; i < n; ++i) {
    const complexd flow = std::polar(1.0, -tau * g.ksq(i));
    out[i] = flow * (u[i] - complexd(0.0, tau) * a[static_cast<std::size_t>(i)]);
  }
  return out;
}

} // namespace lowreg
