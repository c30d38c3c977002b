// Timing comparison of the serial and OpenMP kernel variants on sizes where
// the parallel loops matter more than they do in the desk-scale studies.

#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "lowreg/datagen.hpp"
#include "lowreg/kernels.hpp"
#include "lowreg/schemes.hpp"

using namespace lowreg;

namespace {

double time_best_of(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    best = std::min(best, dt.count());
  }
  return best;
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-28s %10.3f ms %10.3f ms %8.2fx\n", name, serial * 1e3,
              parallel * 1e3, serial / parallel);
}

void compare(const char* name, int reps, const std::function<void()>& fn) {
  kernels::set_exec_mode(kernels::ExecMode::Serial);
  fn();  // warm up (plans, pages)
  const double serial = time_best_of(reps, fn);
  kernels::set_exec_mode(kernels::ExecMode::Parallel);
  fn();
  const double parallel = time_best_of(reps, fn);
  report(name, serial, parallel);
}

} // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; both columns run serially\n");
#endif

  GridPtr grid = make_grid(1, 1 << 20);
  const auto n = static_cast<std::size_t>(grid->size());
  std::printf("grid: d=1, K=%d (%zu modes)\n\n", grid->modes(), n);
  std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

  const Field a = random_sobolev_field({1.0, 1, grid});
  const Field b = random_sobolev_field({1.0, 2, grid});
  std::vector<complexd> out(n);
  std::vector<double> weights(n);
  std::vector<complexd> table(n);

  compare("pointwise multiply", 7,
          [&] { kernels::multiply(a.coeffs(), b.coeffs(), out); });
  compare("linear combination", 7, [&] {
    kernels::linear_combination(complexd(0.0, -0.5), a.coeffs(), 1.0,
                                b.coeffs(), out);
  });
  compare("exp(i t L) symbol table", 7,
          [&] { kernels::exp_laplacian_table(*grid, 0.37, table); });
  compare("conjugate coefficients", 7,
          [&] { kernels::conjugate_coeffs(*grid, a.coeffs(), out); });
  compare("Sobolev weight table", 7,
          [&] { kernels::sobolev_weight_table(*grid, 1.5, weights); });
  compare("weighted norm reduction", 7, [&] {
    volatile double s = kernels::weighted_norm_sq(weights, a.coeffs());
    (void)s;
  });
  compare("pointwise kick", 7, [&] {
    std::vector<complexd> u(a.coeffs().begin(), a.coeffs().end());
    kernels::pointwise_kick(b.coeffs(), 0.01, u);
  });
  compare("random field synthesis", 5,
          [&] { random_sobolev_field({1.25, 7, grid}); });

  // One full integrator step end to end (FFTs stay single-threaded).
  GridPtr big = make_grid(2, 512);
  const Field u2 = random_sobolev_field({2.0, 3, big});
  const Field v2 = random_sobolev_field({2.0, 4, big});
  std::printf("\ngrid: d=2, K=%d\n", big->modes());
  compare("lri2fd step (d=2)", 3, [&] { step_lri2_fd(u2, v2, 0.01); });

  return 0;
}
