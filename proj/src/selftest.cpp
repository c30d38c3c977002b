#include "lowreg/selftest.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include "lowreg/datagen.hpp"
#include "lowreg/fft.hpp"
#include "lowreg/multipliers.hpp"
#include "lowreg/oracles.hpp"
#include "lowreg/schemes.hpp"
#include "lowreg/spectral.hpp"

namespace lowreg {

namespace {

double max_abs_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::int64_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double max_abs(const Field& a) {
  double m = 0.0;
  for (std::int64_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i]));
  return m;
}

CheckResult make_result(const std::string& name, double worst, double tol) {
  CheckResult r;
  r.name = name;
  r.pass = worst <= tol;
  std::ostringstream os;
  os << "worst " << worst << " (tol " << tol << ")";
  r.detail = os.str();
  return r;
}

Field random_field(GridPtr grid, double theta, std::uint64_t seed) {
  return random_sobolev_field({theta, seed, std::move(grid)});
}

Field plane_wave(GridPtr grid, complexd amplitude) {
  Field f(std::move(grid));
  f[1] = amplitude;  // index 1 carries frequency k = 1
  return f;
}

CheckResult check_phi_identity() {
  const double ys[] = {0.0,    1e-8,  -1e-8, 1e-4,  -1e-4, 9.9e-3, 1.01e-2,
                       -0.011, 0.1,   -0.1,  1.0,   -1.0,  3.14,   10.0,
                       -10.0,  100.0, -1e3,  1e4,   -1e5};
  double worst = 0.0;
  for (double y : ys) {
    const complexd z(0.0, y);
    const complexd lhs = z * phi2_scalar(z) + phi1_scalar(z);
    worst = std::max(worst, std::abs(lhs - std::exp(z)));
  }
  return make_result("phi identity z*phi2(z)+phi1(z)=exp(z)", worst, 1e-13);
}

CheckResult check_phi_bounds() {
  double worst = 0.0;
  for (int i = -400; i <= 400; ++i) {
    const complexd z(0.0, i * 0.25);
    worst = std::max(worst, std::abs(phi1_scalar(z)) - 1.0);
    worst = std::max(worst, std::abs(phi2_scalar(z)) - 1.0);
  }
  return make_result("phi symbol modulus <= 1 on iR", worst, 1e-15);
}

CheckResult check_unitarity() {
  GridPtr grid = make_grid(1, 64);
  double worst = 0.0;
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    const Field a = random_field(grid, 1.0, seed);
    for (double t : {0.1, 1.0, -0.7}) {
      const Field b = apply_exp_laplacian(a, t);
      for (double r : {0.0, 1.0, 2.0}) {
        const double na = sobolev_norm(a, r);
        worst = std::max(worst, std::abs(sobolev_norm(b, r) - na) / na);
      }
    }
  }
  return make_result("free flow preserves Sobolev norms", worst, 1e-12);
}

CheckResult check_group_law() {
  GridPtr grid = make_grid(1, 64);
  double worst = 0.0;
  for (std::uint64_t seed : {21u, 22u}) {
    const Field a = random_field(grid, 1.0, seed);
    const double scale = sobolev_norm(a, 0.0);
    for (auto [t, s] : {std::pair{0.3, 0.4}, {0.9, -0.2}, {-0.5, -0.5}}) {
      const Field two = apply_exp_laplacian(apply_exp_laplacian(a, t), s);
      const Field one = apply_exp_laplacian(a, t + s);
      worst = std::max(worst, sobolev_norm(sub(two, one), 0.0) / scale);
      const Field back = apply_exp_laplacian(apply_exp_laplacian(a, t), -t);
      worst = std::max(worst, sobolev_norm(sub(back, a), 0.0) / scale);
    }
  }
  return make_result("free flow group law and inverse", worst, 1e-12);
}

CheckResult check_zero_fixed_point() {
  GridPtr grid = make_grid(1, 32);
  const Field zero(grid);
  const Field V = random_field(grid, 1.5, 31);
  double worst = 0.0;
  const double tau = 0.05;
  worst = std::max(worst, max_abs(step_lri1(zero, V, tau)));
  worst = std::max(worst, max_abs(step_lri2_fd(zero, V, tau)));
  worst = std::max(worst, max_abs(step_lri2_filtered(zero, V, tau)));
  for (SchemeId id : {SchemeId::LIE_SPLIT, SchemeId::STRANG_SPLIT, SchemeId::EXP_EULER})
    worst = std::max(worst, max_abs(step_baseline(zero, V, tau, id)));
  return make_result("zero field is an exact fixed point", worst, 0.0);
}

CheckResult check_parseval() {
  GridPtr grid = make_grid(1, 128);
  double worst = 0.0;
  for (std::uint64_t seed : {41u, 42u, 43u}) {
    const Field a = random_field(grid, 0.5, seed);
    double coeff_sum = 0.0;
    for (std::int64_t i = 0; i < a.size(); ++i) coeff_sum += std::norm(a[i]);
    const auto samples = from_fourier(a);
    double mean_sq = 0.0;
    for (const complexd& s : samples) mean_sq += std::norm(s);
    mean_sq /= static_cast<double>(samples.size());
    worst = std::max(worst, std::abs(coeff_sum - mean_sq) / coeff_sum);
  }
  return make_result("Parseval: coefficient mass = mean square of samples",
                     worst, 1e-12);
}

CheckResult check_roundtrip() {
  GridPtr grid = make_grid(2, 16);
  double worst = 0.0;
  for (std::uint64_t seed : {51u, 52u}) {
    const Field a = random_field(grid, 0.5, seed);
    const auto samples = from_fourier(a);
    const Field back = to_fourier(samples, grid);
    worst = std::max(worst, max_abs_diff(a, back) / max_abs(a));
  }
  return make_result("transform round trip", worst, 1e-12);
}

CheckResult check_datagen() {
  GridPtr g64 = make_grid(1, 64);
  GridPtr g128 = make_grid(1, 128);
  const Field a = random_field(g64, 1.25, 7);
  const Field b = random_field(g64, 1.25, 7);
  const Field c = random_field(g128, 1.25, 7);
  double worst = 0.0;
  for (std::int64_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a[i] - b[i]));
  int k[1];
  for (std::int64_t i = 0; i < a.size(); ++i) {
    a.grid()->freq_vector(i, k);
    worst = std::max(worst, std::abs(a[i] - c[g128->flat_index(k)]));
  }
  return make_result("datagen determinism and grid consistency", worst, 0.0);
}

CheckResult check_convolution_oracle(int seeds) {
  GridPtr grid = make_grid(1, 8);
  double worst = 0.0;
  for (int s = 0; s < seeds; ++s) {
    const Field u = random_field(grid, 0.5, 100 + static_cast<std::uint64_t>(s));
    const Field V = random_field(grid, 0.5, 200 + static_cast<std::uint64_t>(s));
    for (double tau : {0.1, 0.01}) {
      const Field fast = step_lri1(u, V, tau);
      const Field slow = lri1_step_convolution_oracle(u, V, tau);
      worst = std::max(worst, max_abs_diff(fast, slow));
    }
  }
  return make_result("first-order step matches mode convolution oracle", worst,
                     1e-12);
}

CheckResult check_plane_wave() {
  GridPtr grid = make_grid(1, 16);
  const complexd a(1.0, 0.0);
  const Field u0 = plane_wave(grid, a);
  const Field V(grid);
  const double T = 0.25;
  const double tau = 1e-3;
  const int n = static_cast<int>(std::round(T / tau));
  const Field num = evolve(u0, V, {tau, SchemeId::LRI1, false}, n);
  const Field exact =
      plane_wave(grid, a * std::exp(complexd(0.0, -(1.0 + std::norm(a)) * T)));
  const double err = sobolev_norm(sub(num, exact), 0.0);
  return make_result("plane wave evolves to the closed-form solution", err,
                     5e-3);
}

} // namespace

std::vector<CheckResult> run_selftest(int oracle_seeds) {
  std::vector<CheckResult> results;
  results.push_back(check_phi_identity());
  results.push_back(check_phi_bounds());
  results.push_back(check_unitarity());
  results.push_back(check_group_law());
  results.push_back(check_zero_fixed_point());
  results.push_back(check_parseval());
  results.push_back(check_roundtrip());
  results.push_back(check_datagen());
  results.push_back(check_convolution_oracle(oracle_seeds));
  results.push_back(check_plane_wave());
  return results;
}

} // namespace lowreg
