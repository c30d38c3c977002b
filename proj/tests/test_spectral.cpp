#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "lowreg/datagen.hpp"
#include "lowreg/spectral.hpp"

using namespace lowreg;

namespace {

const double kPi = std::acos(-1.0);

Field single_mode(GridPtr grid, int freq, complexd amp = 1.0) {
  Field f(grid);
  const int k[3] = {freq, 0, 0};
  f[f.grid()->flat_index(k)] = amp;
  return f;
}

std::vector<complexd> pure_mode_samples(int K, int freq) {
  std::vector<complexd> s(static_cast<std::size_t>(K));
  for (int j = 0; j < K; ++j)
    s[static_cast<std::size_t>(j)] = std::polar(1.0, freq * 2.0 * kPi * j / K);
  return s;
}

double max_abs_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::int64_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

struct DealiasGuard {
  bool saved = dealiasing_enabled();
  ~DealiasGuard() { set_dealiasing(saved); }
};

} // namespace

TEST_CASE("grid frequency table covers [-K/2, K/2-1] exactly once") {
  GridPtr grid = make_grid(1, 8);
  std::vector<int> seen;
  for (int i = 0; i < 8; ++i) seen.push_back(grid->freq(i));
  std::sort(seen.begin(), seen.end());
  for (int i = 0; i < 8; ++i) CHECK(seen[static_cast<std::size_t>(i)] == i - 4);

  CHECK(make_grid(3, 4)->size() == 64);
  CHECK_THROWS_AS(make_grid(0, 8), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(4, 8), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(1, 7), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(1, 0), std::invalid_argument);
}

TEST_CASE("fields must match their grid size") {
  GridPtr grid = make_grid(1, 8);
  CHECK_THROWS_AS(Field(grid, std::vector<complexd>(7)), std::invalid_argument);
  CHECK_NOTHROW(Field(grid, std::vector<complexd>(8)));
}

TEST_CASE("to_fourier of constant samples has only the zero mode") {
  GridPtr grid = make_grid(1, 16);
  const complexd c(1.7, -0.3);
  std::vector<complexd> samples(16, c);
  const Field f = to_fourier(samples, grid);
  CHECK(std::abs(f[0] - c) < 1e-12);
  for (int i = 1; i < 16; ++i) CHECK(std::abs(f[i]) < 1e-12);
}

TEST_CASE("to_fourier of exp(ix) is a single coefficient at k=1") {
  GridPtr grid = make_grid(1, 8);
  const Field f = to_fourier(pure_mode_samples(8, 1), grid);
  CHECK(std::abs(f[1] - 1.0) < 1e-12);
  for (int i = 0; i < 8; ++i)
    if (i != 1) CHECK(std::abs(f[i]) < 1e-12);
}

TEST_CASE("to_fourier rejects wrong sample counts") {
  GridPtr grid = make_grid(1, 8);
  std::vector<complexd> samples(7);
  CHECK_THROWS_AS(to_fourier(samples, grid), std::invalid_argument);
}

TEST_CASE("round trip reproduces samples") {
  for (int dim : {1, 2}) {
    GridPtr grid = make_grid(dim, 16);
    const Field f = random_sobolev_field({0.5, 99, grid});
    const auto samples = from_fourier(f);
    const Field back = to_fourier(samples, grid);
    CHECK(max_abs_diff(f, back) < 1e-12);
  }
}

TEST_CASE("from_fourier of the zero field and of the k=0 mode") {
  GridPtr grid = make_grid(1, 8);
  for (const complexd& s : from_fourier(Field(grid))) CHECK(s == complexd(0.0));
  const complexd c(0.4, 0.9);
  for (const complexd& s : from_fourier(single_mode(grid, 0, c)))
    CHECK(std::abs(s - c) < 1e-13);
}

TEST_CASE("Parseval identity") {
  GridPtr grid = make_grid(1, 128);
  const Field f = random_sobolev_field({0.5, 5, grid});
  double mass = 0.0;
  for (std::int64_t i = 0; i < f.size(); ++i) mass += std::norm(f[i]);
  const auto samples = from_fourier(f);
  double mean_sq = 0.0;
  for (const complexd& s : samples) mean_sq += std::norm(s);
  mean_sq /= static_cast<double>(samples.size());
  CHECK(mass == doctest::Approx(mean_sq).epsilon(1e-12));
}

TEST_CASE("pointwise_mul basics") {
  GridPtr grid = make_grid(1, 16);
  const Field zero(grid);
  const Field a = random_sobolev_field({1.0, 6, grid});
  CHECK(max_abs_diff(pointwise_mul(a, zero), zero) == 0.0);

  const Field two = single_mode(grid, 0, 2.0);
  const Field three = single_mode(grid, 0, 3.0);
  const Field six = pointwise_mul(two, three);
  CHECK(std::abs(six[0] - 6.0) < 1e-12);

  // Mode arithmetic below the aliasing threshold.
  const Field m1 = single_mode(grid, 1);
  const Field m2 = single_mode(grid, 2);
  CHECK(max_abs_diff(pointwise_mul(m1, m2), single_mode(grid, 3)) < 1e-12);

  // Commutativity.
  const Field b = random_sobolev_field({1.0, 7, grid});
  CHECK(max_abs_diff(pointwise_mul(a, b), pointwise_mul(b, a)) < 1e-14);

  GridPtr other = make_grid(1, 32);
  CHECK_THROWS_AS(pointwise_mul(a, Field(other)), std::invalid_argument);
}

TEST_CASE("pointwise_mul of modes folds or drops aliased output") {
  GridPtr grid = make_grid(1, 16);
  const Field m7 = single_mode(grid, 7);
  DealiasGuard guard;

  set_dealiasing(false);
  const Field aliased = pointwise_mul(m7, m7);  // mode 14 wraps to -2
  CHECK(max_abs_diff(aliased, single_mode(grid, -2)) < 1e-12);

  set_dealiasing(true);
  const Field clean = pointwise_mul(m7, m7);
  CHECK(max_abs_diff(clean, Field(grid)) < 1e-12);
  // In-range products are untouched by the padding.
  CHECK(max_abs_diff(pointwise_mul(single_mode(grid, 1), single_mode(grid, 2)),
                     single_mode(grid, 3)) < 1e-12);
}

TEST_CASE("conj_field") {
  GridPtr grid = make_grid(1, 16);
  // Real-valued field maps to itself.
  std::vector<complexd> samples(16);
  for (int j = 0; j < 16; ++j)
    samples[static_cast<std::size_t>(j)] = std::cos(2.0 * kPi * j / 16) + 0.25;
  const Field real_field = to_fourier(samples, grid);
  CHECK(max_abs_diff(conj_field(real_field), real_field) < 1e-13);

  // i * constant maps to -i * constant.
  const Field ic = single_mode(grid, 0, complexd(0.0, 1.0));
  CHECK(max_abs_diff(conj_field(ic), single_mode(grid, 0, complexd(0.0, -1.0))) == 0.0);

  // conj(exp(ix)) is the k=-1 mode.
  CHECK(max_abs_diff(conj_field(single_mode(grid, 1)), single_mode(grid, -1)) == 0.0);
}

TEST_CASE("gradient") {
  GridPtr grid = make_grid(1, 16);
  const Field c = single_mode(grid, 0, 2.0);
  CHECK(max_abs_diff(gradient(c)[0], Field(grid)) == 0.0);

  // d/dx exp(ix) = i exp(ix)
  CHECK(max_abs_diff(gradient(single_mode(grid, 1))[0],
                     single_mode(grid, 1, complexd(0.0, 1.0))) < 1e-14);

  // d/dx sin(2x) = 2 cos(2x)
  std::vector<complexd> sin2(16), cos2(16);
  for (int j = 0; j < 16; ++j) {
    sin2[static_cast<std::size_t>(j)] = std::sin(2.0 * 2.0 * kPi * j / 16);
    cos2[static_cast<std::size_t>(j)] = 2.0 * std::cos(2.0 * 2.0 * kPi * j / 16);
  }
  CHECK(max_abs_diff(gradient(to_fourier(sin2, grid))[0],
                     to_fourier(cos2, grid)) < 1e-12);
}

TEST_CASE("gradient per axis in two dimensions") {
  GridPtr grid = make_grid(2, 8);
  Field f(grid);
  const int k[3] = {1, 2, 0};
  f[grid->flat_index(k)] = 1.0;
  const auto g = gradient(f);
  CHECK(std::abs(g[0][grid->flat_index(k)] - complexd(0.0, 1.0)) < 1e-14);
  CHECK(std::abs(g[1][grid->flat_index(k)] - complexd(0.0, 2.0)) < 1e-14);
}

TEST_CASE("sobolev_norm values") {
  GridPtr grid = make_grid(1, 16);
  for (double r : {0.0, 0.5, 1.0, 2.5}) CHECK(sobolev_norm(Field(grid), r) == 0.0);

  const Field m1 = single_mode(grid, 1);
  for (double r : {0.0, 0.5, 1.0, 3.0})
    CHECK(sobolev_norm(m1, r) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

  CHECK(sobolev_norm(single_mode(grid, 2), 1.0) ==
        doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));

  // At r = 0 the weight is 2 for every mode, including k = 0.
  CHECK(sobolev_norm(single_mode(grid, 0), 0.0) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

  CHECK_THROWS_AS(sobolev_norm(m1, -0.5), std::domain_error);
}

TEST_CASE("sobolev_norm is nondecreasing in r") {
  GridPtr grid = make_grid(1, 64);
  const Field a = random_sobolev_field({1.0, 8, grid});
  const double rs[] = {0.25, 0.5, 1.0, 1.5, 2.0, 3.0};
  for (std::size_t i = 1; i < std::size(rs); ++i)
    CHECK(sobolev_norm(a, rs[i - 1]) <= sobolev_norm(a, rs[i]) * (1 + 1e-14));

  // From r = 0 upward the comparison needs a mean-zero field (the k = 0
  // weight drops from 2 to 1 otherwise).
  Field b = a;
  b[0] = 0.0;
  CHECK(sobolev_norm(b, 0.0) <= sobolev_norm(b, 0.25) * (1 + 1e-14));
}

TEST_CASE("linear field algebra") {
  GridPtr grid = make_grid(1, 16);
  const Field a = random_sobolev_field({1.0, 9, grid});
  const Field b = random_sobolev_field({1.0, 10, grid});
  const Field s = add(a, b);
  for (std::int64_t i = 0; i < a.size(); ++i) CHECK(s[i] == a[i] + b[i]);
  const Field d = sub(a, b);
  for (std::int64_t i = 0; i < a.size(); ++i) CHECK(d[i] == a[i] - b[i]);
  const Field sc = scaled(a, complexd(0.0, -2.0));
  for (std::int64_t i = 0; i < a.size(); ++i)
    CHECK(sc[i] == a[i] * complexd(0.0, -2.0));
}
