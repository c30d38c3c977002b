#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lowreg/datagen.hpp"
#include "lowreg/multipliers.hpp"
#include "lowreg/spectral.hpp"

using namespace lowreg;

namespace {

const double kPi = std::acos(-1.0);

double max_abs_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::int64_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

} // namespace

TEST_CASE("phi scalars at z = 0") {
  CHECK(phi1_scalar(0.0) == 1.0);
  CHECK(phi2_scalar(0.0) == 0.5);
}

TEST_CASE("phi scalars at z = i*pi against high-precision values") {
  const complexd z(0.0, kPi);
  // phi1(i pi) = 2i/pi, phi2(i pi) = -2/pi^2 + i/pi
  CHECK(std::abs(phi1_scalar(z) - complexd(0.0, 0.63661977236758134)) < 1e-15);
  CHECK(std::abs(phi2_scalar(z) -
                 complexd(-0.20264236728467554, 0.31830988618379067)) < 1e-15);
}

TEST_CASE("phi1 is bounded by 1 on the imaginary axis") {
  for (int i = -200; i <= 200; ++i) {
    const double y = i * 0.37;
    CHECK(std::abs(phi1_scalar(complexd(0.0, y))) <= 1.0 + 1e-15);
  }
}

TEST_CASE("z*phi2 + phi1 = exp on sampled imaginary arguments") {
  for (double y : {0.0, 1e-9, -1e-7, 1e-4, -1e-3, 0.009, 0.011, 0.3, -2.0, 17.0,
                   -123.0, 4096.0}) {
    const complexd z(0.0, y);
    CHECK(std::abs(z * phi2_scalar(z) + phi1_scalar(z) - std::exp(z)) <= 1e-13);
  }
}

namespace {

// Extended-precision evaluation; accurate to ~1e-17 near |z| = 1e-2, well
// below the 1e-14 agreement being checked.
complexd phi1_ld(complexd z) {
  const std::complex<long double> zl(z.real(), z.imag());
  const std::complex<long double> v = (std::exp(zl) - 1.0L) / zl;
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

complexd phi2_ld(complexd z) {
  const std::complex<long double> zl(z.real(), z.imag());
  const std::complex<long double> p1 = (std::exp(zl) - 1.0L) / zl;
  const std::complex<long double> v = (std::exp(zl) - p1) / zl;
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

} // namespace

TEST_CASE("series and direct branches agree at the switch radius") {
  for (double s : {1.0, -1.0}) {
    const complexd below(0.0, s * 0.01 * (1.0 - 1e-9));  // series branch
    const complexd above(0.0, s * 0.01 * (1.0 + 1e-9));  // direct branch
    for (const complexd z : {below, above}) {
      CHECK(std::abs(phi1_scalar(z) - phi1_ld(z)) <= 1e-14 * std::abs(phi1_ld(z)));
      // phi2 divides an O(|z|) difference by z, so its direct branch carries
      // an extra conditioning factor.
      CHECK(std::abs(phi2_scalar(z) - phi2_ld(z)) <= 1e-13 * std::abs(phi2_ld(z)));
    }
  }
}

TEST_CASE("apply_exp_laplacian basics") {
  GridPtr grid = make_grid(1, 32);
  const Field a = random_sobolev_field({1.0, 3, grid});

  CHECK(max_abs_diff(apply_exp_laplacian(a, 0.0), a) == 0.0);

  Field c(grid);
  c[0] = complexd(0.3, 0.4);
  CHECK(max_abs_diff(apply_exp_laplacian(c, 1.7), c) == 0.0);

  Field m1(grid);
  m1[1] = 1.0;
  const Field rotated = apply_exp_laplacian(m1, kPi);
  CHECK(std::abs(rotated[1] - complexd(-1.0, 0.0)) < 1e-14);
}

TEST_CASE("free flow preserves Sobolev norms and satisfies the group law") {
  GridPtr grid = make_grid(1, 64);
  const Field a = random_sobolev_field({1.0, 4, grid});
  for (double t : {0.05, 0.6, -1.0}) {
    const Field b = apply_exp_laplacian(a, t);
    for (double r : {0.0, 0.5, 1.0, 2.0})
      CHECK(sobolev_norm(b, r) ==
            doctest::Approx(sobolev_norm(a, r)).epsilon(1e-12));
  }
  const double scale = sobolev_norm(a, 0.0);
  const Field two = apply_exp_laplacian(apply_exp_laplacian(a, 0.3), 0.45);
  CHECK(sobolev_norm(sub(two, apply_exp_laplacian(a, 0.75)), 0.0) <=
        1e-12 * scale);
  const Field back = apply_exp_laplacian(apply_exp_laplacian(a, 0.9), -0.9);
  CHECK(sobolev_norm(sub(back, a), 0.0) <= 1e-12 * scale);
}

TEST_CASE("apply_phi on the zero mode and on single modes") {
  GridPtr grid = make_grid(1, 16);
  Field c(grid);
  c[0] = complexd(1.0, -2.0);
  CHECK(max_abs_diff(apply_phi(PhiKind::Phi1, c, 1.0, 0.3), c) == 0.0);
  CHECK(max_abs_diff(apply_phi(PhiKind::Phi2, c, 2.0, 0.3), scaled(c, 0.5)) == 0.0);

  // Operator application on a single mode equals the scalar symbol.
  for (int freq : {1, 2, -3, -8}) {
    Field m(grid);
    const int k[1] = {freq};
    m[grid->flat_index(k)] = 1.0;
    const double ksq = static_cast<double>(freq) * freq;
    for (double cc : {1.0, 2.0}) {
      const Field out = apply_phi(PhiKind::Phi1, m, cc, 0.1);
      CHECK(out[grid->flat_index(k)] == phi1_scalar(complexd(0.0, cc * 0.1 * ksq)));
      const Field out2 = apply_phi(PhiKind::Phi2, m, cc, 0.1);
      CHECK(out2[grid->flat_index(k)] == phi2_scalar(complexd(0.0, cc * 0.1 * ksq)));
    }
  }
}

TEST_CASE("phi multipliers do not increase Sobolev norms") {
  GridPtr grid = make_grid(1, 64);
  for (std::uint64_t seed : {5u, 6u}) {
    const Field a = random_sobolev_field({1.0, seed, grid});
    for (double r : {0.0, 1.0}) {
      const double na = sobolev_norm(a, r);
      CHECK(sobolev_norm(apply_phi(PhiKind::Phi1, a, 1.0, 0.25), r) <= na * (1 + 1e-14));
      CHECK(sobolev_norm(apply_phi(PhiKind::Phi2, a, 2.0, 0.25), r) <= na * (1 + 1e-14));
      CHECK(sobolev_norm(apply_filter_psi(a, 0.25), r) <= na * (1 + 1e-14));
    }
  }
}

TEST_CASE("filter psi basics") {
  GridPtr grid = make_grid(1, 16);
  Field c(grid);
  c[0] = complexd(0.7, 0.1);
  CHECK(max_abs_diff(apply_filter_psi(c, 0.5), c) == 0.0);

  Field m1(grid);
  m1[1] = 1.0;
  CHECK(apply_filter_psi(m1, 0.5)[1] == phi1_scalar(complexd(0.0, 0.5)));
}

TEST_CASE("filter psi deviates from identity at rate tau") {
  // ||(Psi - I)a||_{L2} <= C tau ||a||_{H1} with C independent of tau.
  // Per mode |phi1(i tau |k|) - 1| <= tau |k| / 2; with the weight-2 r=0
  // convention the constant is 1/sqrt(2).
  GridPtr grid = make_grid(1, 128);
  const Field a = random_sobolev_field({1.0, 7, grid});
  const double h1 = sobolev_norm(a, 1.0);
  for (int e = 3; e <= 10; ++e) {
    const double tau = std::pow(2.0, -e);
    const double dev = sobolev_norm(sub(apply_filter_psi(a, tau), a), 0.0);
    CHECK(dev <= tau * h1 / std::sqrt(2.0));
  }
}
