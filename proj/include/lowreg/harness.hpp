#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lowreg/field.hpp"
#include "lowreg/schemes.hpp"

namespace lowreg {

struct ReferencePolicy {
  SchemeId scheme = SchemeId::LRI2_FD;
  SchemeId cross_scheme = SchemeId::STRANG_SPLIT;
  /// tau_ref = min(tau_list) / divisor.
  int tau_divisor = 64;
};

struct ExperimentConfig {
  int dim = 1;
  int modes = 256;
  double T = 1.0;
  SchemeId scheme = SchemeId::LRI1;
  std::vector<double> tau_list;   // strictly decreasing, each dividing T
  double theta_u = 1.25;
  double theta_v = 1.25;
  std::vector<double> norms = {0.0};
  std::uint64_t seed = 1;
  ReferencePolicy reference;
  bool conjugate_commutator = false;
};

void validate_config(const ExperimentConfig& cfg);

/// Fit log(error) = log(C) + p log(tau) by least squares.
/// residual is the RMS deviation of the fit in log units.
struct OrderFit {
  double order = 0.0;
  double residual = 0.0;
};
OrderFit fit_order(const std::vector<std::pair<double, double>>& points);

/// Trimmed variant: drop the largest tau points until the residual falls
/// below 0.15 log units, keeping at least 3 points (or all, if fewer).
struct TrimmedFit {
  OrderFit raw;
  OrderFit trimmed;
  int points_kept = 0;
};
TrimmedFit fit_order_trimmed(const std::vector<std::pair<double, double>>& points);

enum class RunStatus { Ok, Blowup };

struct TauResult {
  double tau = 0.0;
  int n_steps = 0;
  RunStatus status = RunStatus::Ok;
  int blowup_step = -1;
  std::vector<double> errors;  // one per cfg.norms entry
};

struct NormResult {
  double r = 0.0;
  TrimmedFit fit;
  bool monotone = true;           // error nondecreasing in tau over kept points
  double reference_crosscheck = 0.0;  // ||ref - cross_ref||_r
  bool resolved = true;
};

struct ConvergenceReport {
  ExperimentConfig config;
  std::vector<TauResult> runs;
  std::vector<NormResult> norms;
  bool any_blowup = false;
  bool resolved = true;  // cross-check passed in every norm
};

struct ReferenceSolution {
  Field primary;
  Field cross;
  double tau_ref = 0.0;
};

/// Integrate to time T with the policy scheme at tau_ref, plus the cross
/// scheme at the same tau_ref for the resolution check performed by
/// convergence_study.
ReferenceSolution reference_solution(const Field& u0, const Field& V, double T,
                                     double tau_min, const ReferencePolicy& policy,
                                     bool conjugate_commutator = false);

/// sobolev_norm(num - ref, r); a finer reference is projected onto the
/// numerical grid first.
double measure_error(const Field& num, const Field& ref, double r);

/// Generate data, compute the reference once, run every tau, fit orders.
ConvergenceReport convergence_study(const ExperimentConfig& cfg);

/// Seeds for the initial datum and the potential derived from the config seed.
std::uint64_t data_seed_u(std::uint64_t seed);
std::uint64_t data_seed_v(std::uint64_t seed);

struct ReportPaths {
  std::string csv;
  std::string plot_prefix;  // one SVG per norm: <prefix>_r<value>.svg
};

/// Emit the CSV (header scheme,d,K,T,theta_u,theta_V,r,tau,error,order_fit,seed;
/// 17 significant digits, LF endings) and one log-log SVG per norm with
/// slope-1 and slope-2 guide lines. Returns the paths written.
std::vector<std::string> write_report(const ConvergenceReport& report,
                                      const ReportPaths& paths);

std::string format_double(double v);  // %.17g, used by all serialization
std::string norm_suffix(double r);    // "0.5" -> "0.5" filename fragment

} // namespace lowreg
