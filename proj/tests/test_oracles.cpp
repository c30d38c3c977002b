#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lowreg/datagen.hpp"
#include "lowreg/oracles.hpp"
#include "lowreg/schemes.hpp"
#include "lowreg/spectral.hpp"

using namespace lowreg;

namespace {

double max_abs_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::int64_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

} // namespace

TEST_CASE("Gauss-Legendre rules integrate polynomials exactly") {
  for (int n : {2, 5, 12, 32}) {
    const QuadratureRule rule = gauss_legendre(n);
    REQUIRE(rule.nodes.size() == static_cast<std::size_t>(n));
    // Exact on [0,1] for x^p, p <= 2n-1.
    for (int p : {0, 1, 3, 2 * n - 1}) {
      double integral = 0.0;
      for (int i = 0; i < n; ++i)
        integral += rule.weights[static_cast<std::size_t>(i)] *
                    std::pow(rule.nodes[static_cast<std::size_t>(i)], p);
      CHECK(integral == doctest::Approx(1.0 / (p + 1)).epsilon(1e-13));
    }
  }
  CHECK_THROWS_AS(gauss_legendre(0), std::invalid_argument);
}

TEST_CASE("oscillatory integral oracle basics") {
  GridPtr grid = make_grid(1, 16);
  const Field zero(grid);
  const Field V = random_sobolev_field({1.0, 2, grid});
  CHECK(max_abs_diff(oscillatory_integral_oracle(zero, V, 0.1, 8), zero) == 0.0);

  CHECK_THROWS_AS(oscillatory_integral_oracle(zero, V, 0.1, 1),
                  std::invalid_argument);

  // tau -> 0: oracle/tau approaches the integrand at zeta = 0, V u + u^2 conj u.
  const Field u = random_sobolev_field({2.0, 3, grid});
  const double tau = 1e-6;
  const Field limit = add(pointwise_mul(V, u),
                          pointwise_mul(pointwise_mul(u, u), conj_field(u)));
  const Field scaled_oracle = scaled(oscillatory_integral_oracle(u, V, tau, 8),
                                     1.0 / tau);
  CHECK(sobolev_norm(sub(scaled_oracle, limit), 0.0) <
        1e-4 * sobolev_norm(limit, 0.0));
}

TEST_CASE("convolution oracle equals one first-order step") {
  GridPtr grid = make_grid(1, 8);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const Field u = random_sobolev_field({0.5, seed, grid});
    const Field V = random_sobolev_field({0.5, seed + 50, grid});
    for (double tau : {0.25, 0.01})
      CHECK(max_abs_diff(step_lri1(u, V, tau),
                         lri1_step_convolution_oracle(u, V, tau)) < 1e-12);
  }
}

TEST_CASE("convolution oracle equals one step in two dimensions") {
  GridPtr grid = make_grid(2, 4);
  const Field u = random_sobolev_field({0.5, 7, grid});
  const Field V = random_sobolev_field({0.5, 8, grid});
  CHECK(max_abs_diff(step_lri1(u, V, 0.1),
                     lri1_step_convolution_oracle(u, V, 0.1)) < 1e-12);
}
