#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lowreg/field.hpp"

namespace lowreg {

enum class SchemeId {
  LRI1,           // first-order low-regularity integrator
  LRI2_FD,        // second order, finite-difference stabilization
  LRI2_FILTERED,  // second order, filter stabilization
  LIE_SPLIT,
  STRANG_SPLIT,
  EXP_EULER,
};

std::string scheme_name(SchemeId id);
SchemeId scheme_from_name(const std::string& name);

struct StepConfig {
  double tau = 0.0;
  SchemeId scheme = SchemeId::LRI1;
  /// Middle commutator term reads (grad u . grad u) v by default; the toggle
  /// switches to the conjugated reading (grad u . conj(grad u)) v. Only the
  /// filtered second-order scheme evaluates the commutator.
  bool conjugate_commutator = false;
};

/// Thrown by evolve when a step produces non-finite coefficients.
class BlowupError : public std::runtime_error {
public:
  BlowupError(int step, const std::string& what)
      : std::runtime_error(what), step_(step) {}
  int step() const { return step_; }

private:
  int step_;
};

/// Nonlinearity f(u, conj u, V) = -i (V u + u^2 conj(u)).
Field nonlinearity_f(const Field& u, const Field& V);

/// Commutator-type term
///   C(u, v, w) = -2i ( grad w . grad u + (grad u . grad u) v
///                      + grad(u^2) . grad v ),
/// with spectral gradients and pointwise products.
Field commutator_C(const Field& u, const Field& v, const Field& w,
                   bool conjugate_middle = false);

/// S(u, V) = |u|^4 u + 3 u |u|^2 V - |u|^2 u conj(V) + u V^2.
Field quadratic_source(const Field& u, const Field& V);

/// One step of the first-order integrator,
///   u <- e^{i tau L}[u - i tau (u phi1(-i tau L)V + u^2 phi1(-2i tau L)conj u)],
/// where L is the Laplacian.
Field step_lri1(const Field& u, const Field& V, double tau);

/// One step of the second-order integrator with finite-difference
/// stabilization: the phi1 group, two phi2 groups of opposite sign (one
/// composed with the free flow), and the -tau^2/2 quadratic source.
Field step_lri2_fd(const Field& u, const Field& V, double tau);

/// One step of the second-order integrator with filter stabilization: the
/// phi1 group, the filtered commutator correction
///   -i tau^2 e^{i tau L} Psi C(u, phi2(-2i tau L)conj u, phi2(-i tau L)V),
/// and the -tau^2/2 quadratic source.
Field step_lri2_filtered(const Field& u, const Field& V, double tau,
                         bool conjugate_commutator = false);

/// Splitting and exponential-Euler baselines. The potential/nonlinearity
/// substep uses the exact pointwise flow of i u_t = V u + |u|^2 u.
Field step_baseline(const Field& u, const Field& V, double tau, SchemeId which);

/// Reference forms of the integrator steps, composed verbatim from the public
/// spectral operations (one transform per product). Slower than the fused
/// paths above but easier to audit; kept for testing and used whenever
/// dealiasing is enabled.
Field step_lri1_reference(const Field& u, const Field& V, double tau);
Field step_lri2_fd_reference(const Field& u, const Field& V, double tau);

/// n_steps applications of the selected one-step map. Throws BlowupError with
/// the failing step index if coefficients become non-finite. If snapshots is
/// non-null, the state is appended every snapshot_stride steps.
Field evolve(const Field& u0, const Field& V, const StepConfig& cfg,
             int n_steps, std::vector<Field>* snapshots = nullptr,
             int snapshot_stride = 0);

} // namespace lowreg
