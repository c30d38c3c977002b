#include "lowreg/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace lowreg {

namespace {

// One in-place plan per (dim, K, direction). FFTW_ESTIMATE keeps planning
// deterministic; FFTW_UNALIGNED lets the plans run on any buffer via the
// new-array execute interface. Planning is serialized; execution is
// reentrant.
class PlanCache {
public:
  fftw_plan get(const Grid& grid, int sign) {
    const auto key = std::make_tuple(grid.dim(), grid.modes(), sign);
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::vector<complexd> scratch(static_cast<std::size_t>(grid.size()));
    int n[3] = {grid.modes(), grid.modes(), grid.modes()};
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_dft(grid.dim(), n, buf, buf, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(key, plan);
    return plan;
  }

private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

} // namespace

void fft_forward_inplace(const Grid& grid, complexd* data) {
  fftw_plan plan = cache().get(grid, FFTW_FORWARD);
  auto* buf = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plan, buf, buf);
  const double scale = 1.0 / static_cast<double>(grid.size());
  const std::int64_t n = grid.size();
  for (std::int64_t i = 0; i < n; ++i) data[i] *= scale;
}

void fft_inverse_inplace(const Grid& grid, complexd* data) {
  fftw_plan plan = cache().get(grid, FFTW_BACKWARD);
  auto* buf = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plan, buf, buf);
}

Field to_fourier(std::span<const complexd> samples, GridPtr grid) {
  if (static_cast<std::int64_t>(samples.size()) != grid->size())
    throw std::invalid_argument("to_fourier: sample count does not match grid size");
  std::vector<complexd> coeffs(samples.begin(), samples.end());
  fft_forward_inplace(*grid, coeffs.data());
  return Field(std::move(grid), std::move(coeffs));
}

std::vector<complexd> from_fourier(const Field& f) {
  std::vector<complexd> samples(f.coeffs().begin(), f.coeffs().end());
  fft_inverse_inplace(*f.grid(), samples.data());
  return samples;
}

} // namespace lowreg
