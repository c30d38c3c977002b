#include "lowreg/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lowreg/datagen.hpp"
#include "lowreg/spectral.hpp"

namespace lowreg {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

int steps_for(double T, double tau) {
  const double ratio = T / tau;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, rounded))
    throw std::invalid_argument("time step does not divide the final time");
  return static_cast<int>(rounded);
}

} // namespace

std::uint64_t data_seed_u(std::uint64_t seed) { return seed; }
std::uint64_t data_seed_v(std::uint64_t seed) {
  return splitmix64(seed ^ 0x5665656C64505456ull);
}

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.dim < 1 || cfg.dim > 3)
    throw std::invalid_argument("dimension must be 1, 2 or 3");
  if (cfg.modes < 2 || cfg.modes % 2 != 0)
    throw std::invalid_argument("modes per axis must be even and >= 2");
  if (!(cfg.T > 0.0)) throw std::invalid_argument("final time must be positive");
  if (cfg.tau_list.empty())
    throw std::invalid_argument("tau list must not be empty");
  for (std::size_t i = 0; i < cfg.tau_list.size(); ++i) {
    const double tau = cfg.tau_list[i];
    if (!(tau > 0.0) || tau > 1.0)
      throw std::invalid_argument("every tau must lie in (0, 1]");
    steps_for(cfg.T, tau);
    if (i > 0 && !(tau < cfg.tau_list[i - 1]))
      throw std::invalid_argument("tau list must be strictly decreasing");
  }
  if (cfg.theta_u < 0.0 || cfg.theta_v < 0.0)
    throw std::invalid_argument("regularity parameters must be >= 0");
  if (cfg.norms.empty()) throw std::invalid_argument("norm list must not be empty");
  for (double r : cfg.norms)
    if (r < 0.0) throw std::invalid_argument("Sobolev exponents must be >= 0");
  if (cfg.reference.tau_divisor < 1)
    throw std::invalid_argument("reference tau divisor must be >= 1");
}

OrderFit fit_order(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2)
    throw std::invalid_argument("order fit needs at least two points");
  const auto n = static_cast<double>(points.size());
  double sx = 0.0, sy = 0.0;
  std::vector<double> xs, ys;
  for (const auto& [tau, err] : points) {
    if (!(err > 0.0) || !std::isfinite(err))
      throw std::domain_error("order fit needs strictly positive errors");
    xs.push_back(std::log(tau));
    ys.push_back(std::log(err));
    sx += xs.back();
    sy += ys.back();
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) throw std::domain_error("order fit needs distinct tau values");
  OrderFit fit;
  fit.order = sxy / sxx;
  double rss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double pred = my + fit.order * (xs[i] - mx);
    rss += (ys[i] - pred) * (ys[i] - pred);
  }
  fit.residual = std::sqrt(rss / n);
  return fit;
}

TrimmedFit fit_order_trimmed(const std::vector<std::pair<double, double>>& points) {
  TrimmedFit result;
  result.raw = fit_order(points);
  // Points arrive sorted by descending tau; drop the largest-tau entries
  // (pre-asymptotic range) until the fit settles, keeping at least 3.
  std::vector<std::pair<double, double>> kept = points;
  std::sort(kept.begin(), kept.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  OrderFit fit = result.raw;
  while (fit.residual > 0.15 && kept.size() > 3) {
    kept.erase(kept.begin());
    fit = fit_order(kept);
  }
  result.trimmed = fit;
  result.points_kept = static_cast<int>(kept.size());
  return result;
}

double measure_error(const Field& num, const Field& ref, double r) {
  const Field* ref_ptr = &ref;
  Field projected(num.grid());
  if (!(*num.grid() == *ref.grid())) {
    if (ref.grid()->dim() != num.grid()->dim() ||
        ref.grid()->modes() < num.grid()->modes())
      throw std::invalid_argument("measure_error: incompatible grids");
    projected = truncated_projection(ref, num.grid()->modes());
    ref_ptr = &projected;
  }
  return sobolev_norm(sub(num, *ref_ptr), r);
}

ReferenceSolution reference_solution(const Field& u0, const Field& V, double T,
                                     double tau_min, const ReferencePolicy& policy,
                                     bool conjugate_commutator) {
  if (T == 0.0) return ReferenceSolution{u0, u0, 0.0};
  const double tau_ref = tau_min / policy.tau_divisor;
  const int n_ref = steps_for(T, tau_ref);
  StepConfig primary_cfg{tau_ref, policy.scheme, conjugate_commutator};
  StepConfig cross_cfg{tau_ref, policy.cross_scheme, conjugate_commutator};
  Field primary = evolve(u0, V, primary_cfg, n_ref);
  Field cross = evolve(u0, V, cross_cfg, n_ref);
  return ReferenceSolution{std::move(primary), std::move(cross), tau_ref};
}

ConvergenceReport convergence_study(const ExperimentConfig& cfg) {
  validate_config(cfg);
  ConvergenceReport report;
  report.config = cfg;

  GridPtr grid = make_grid(cfg.dim, cfg.modes);
  const Field u0 = random_sobolev_field({cfg.theta_u, data_seed_u(cfg.seed), grid});
  const Field V = random_sobolev_field({cfg.theta_v, data_seed_v(cfg.seed), grid});

  const double tau_min = cfg.tau_list.back();
  const ReferenceSolution ref =
      reference_solution(u0, V, cfg.T, tau_min, cfg.reference,
                         cfg.conjugate_commutator);

  for (double tau : cfg.tau_list) {
    TauResult run;
    run.tau = tau;
    run.n_steps = steps_for(cfg.T, tau);
    try {
      StepConfig step_cfg{tau, cfg.scheme, cfg.conjugate_commutator};
      const Field final_state = evolve(u0, V, step_cfg, run.n_steps);
      for (double r : cfg.norms)
        run.errors.push_back(measure_error(final_state, ref.primary, r));
    } catch (const BlowupError& e) {
      run.status = RunStatus::Blowup;
      run.blowup_step = e.step();
      run.errors.assign(cfg.norms.size(),
                        std::numeric_limits<double>::quiet_NaN());
      report.any_blowup = true;
    }
    report.runs.push_back(std::move(run));
  }

  for (std::size_t ri = 0; ri < cfg.norms.size(); ++ri) {
    NormResult nr;
    nr.r = cfg.norms[ri];
    std::vector<std::pair<double, double>> points;
    double min_error = std::numeric_limits<double>::infinity();
    for (const TauResult& run : report.runs) {
      if (run.status != RunStatus::Ok) continue;
      points.emplace_back(run.tau, run.errors[ri]);
      min_error = std::min(min_error, run.errors[ri]);
    }
    if (points.size() >= 2) {
      nr.fit = fit_order_trimmed(points);
      // Monotonicity over the kept (asymptotic) range: tau descending, so
      // errors must be nonincreasing along the list.
      const std::size_t first_kept =
          points.size() - static_cast<std::size_t>(nr.fit.points_kept);
      for (std::size_t i = first_kept + 1; i < points.size(); ++i)
        if (points[i].second > points[i - 1].second) nr.monotone = false;
    }
    nr.reference_crosscheck = measure_error(ref.primary, ref.cross, nr.r);
    if (std::isfinite(min_error))
      nr.resolved = nr.reference_crosscheck <= 0.01 * min_error;
    else
      nr.resolved = false;
    if (!nr.resolved) report.resolved = false;
    report.norms.push_back(std::move(nr));
  }
  return report;
}

} // namespace lowreg
