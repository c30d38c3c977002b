#include "lowreg/schemes.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "lowreg/fft.hpp"
#include "lowreg/kernels.hpp"
#include "lowreg/multipliers.hpp"
#include "lowreg/spectral.hpp"

namespace lowreg {

namespace {

using cvec = std::vector<complexd>;

const complexd kI(0.0, 1.0);

cvec to_phys(const Grid& g, std::span<const complexd> coeffs) {
  cvec p(coeffs.begin(), coeffs.end());
  fft_inverse_inplace(g, p.data());
  return p;
}

// Per-evolve state: multiplier tables and every V-derived array the one-step
// maps need, so the time loop does no redundant transforms of the potential.
struct StepWorkspace {
  GridPtr grid;
  double tau = 0.0;
  SchemeId scheme = SchemeId::LRI1;
  bool conjugate_commutator = false;
  Field V;

  cvec exp_tab;               // exp(i tau L) symbol
  cvec phi1_2, phi2_2;        // phi(+-) tables applied to conj u
  cvec v_phys, vbar_phys, v2_phys;
  cvec v_phi1_phys;           // phi1(-i tau L) V in physical space
  cvec v_phi2_phys;           // phi2(-i tau L) V
  cvec ev_phi2_phys;          // phi2(-i tau L) e^{i tau L} V

  explicit StepWorkspace(const Field& potential) : V(potential) {}
};

StepWorkspace make_workspace(const Field& V, const StepConfig& cfg) {
  StepWorkspace ws(V);
  const Grid& g = *V.grid();
  const auto n = static_cast<std::size_t>(g.size());
  ws.grid = V.grid();
  ws.tau = cfg.tau;
  ws.scheme = cfg.scheme;
  ws.conjugate_commutator = cfg.conjugate_commutator;
  ws.exp_tab = exp_laplacian_table(g, cfg.tau);

  const bool lri = cfg.scheme == SchemeId::LRI1 || cfg.scheme == SchemeId::LRI2_FD;
  if (lri) {
    ws.phi1_2 = phi_table(PhiKind::Phi1, g, 2.0, cfg.tau);
    cvec phi1_1 = phi_table(PhiKind::Phi1, g, 1.0, cfg.tau);
    cvec tmp(n);
    kernels::apply_table_to(phi1_1, V.coeffs(), tmp);
    fft_inverse_inplace(g, tmp.data());
    ws.v_phi1_phys = std::move(tmp);
  }
  if (cfg.scheme == SchemeId::LRI2_FD) {
    ws.phi2_2 = phi_table(PhiKind::Phi2, g, 2.0, cfg.tau);
    cvec phi2_1 = phi_table(PhiKind::Phi2, g, 1.0, cfg.tau);

    cvec tmp(n);
    kernels::apply_table_to(phi2_1, V.coeffs(), tmp);
    fft_inverse_inplace(g, tmp.data());
    ws.v_phi2_phys = std::move(tmp);

    cvec ev(n);
    kernels::apply_table_to(ws.exp_tab, V.coeffs(), ev);
    kernels::apply_table(phi2_1, ev);
    fft_inverse_inplace(g, ev.data());
    ws.ev_phi2_phys = std::move(ev);
  }
  if (cfg.scheme == SchemeId::LRI2_FD || cfg.scheme == SchemeId::LIE_SPLIT ||
      cfg.scheme == SchemeId::STRANG_SPLIT || cfg.scheme == SchemeId::EXP_EULER) {
    ws.v_phys = to_phys(g, V.coeffs());
  }
  if (cfg.scheme == SchemeId::LRI2_FD) {
    ws.vbar_phys.resize(n);
    kernels::conjugate_pointwise(ws.v_phys, ws.vbar_phys);
    ws.v2_phys.resize(n);
    kernels::multiply(ws.v_phys, ws.v_phys, ws.v2_phys);
  }
  return ws;
}

// |u|^4 u + 3 u |u|^2 V - |u|^2 u conj(V) + u V^2, assembled pointwise from
// physical-space arrays.
cvec quadratic_source_phys(const cvec& u_phys, const StepWorkspace& ws) {
  const auto n = u_phys.size();
  cvec m(n), um(n), acc(n), tmp(n);
  kernels::abs_squared(u_phys, m);
  kernels::multiply(u_phys, m, um);                  // u |u|^2
  kernels::multiply(m, m, acc);
  kernels::apply_table(u_phys, acc);                 // |u|^4 u
  kernels::multiply(um, ws.v_phys, tmp);
  kernels::linear_combination(1.0, acc, 3.0, tmp, acc);
  kernels::multiply(um, ws.vbar_phys, tmp);
  kernels::linear_combination(1.0, acc, -1.0, tmp, acc);
  kernels::multiply(u_phys, ws.v2_phys, tmp);
  kernels::linear_combination(1.0, acc, 1.0, tmp, acc);
  return acc;
}

Field step_lri1_fused(const Field& u, const StepWorkspace& ws) {
  const Grid& g = *u.grid();
  const auto n = static_cast<std::size_t>(g.size());

  cvec u_phys = to_phys(g, u.coeffs());
  cvec g1(n);
  kernels::conjugate_coeffs(g, u.coeffs(), g1);
  kernels::apply_table(ws.phi1_2, g1);
  fft_inverse_inplace(g, g1.data());                 // phi1(-2i tau L) conj u

  cvec a(n), tmp(n);
  kernels::multiply(u_phys, ws.v_phi1_phys, a);
  kernels::multiply(u_phys, u_phys, tmp);
  kernels::apply_table(g1, tmp);
  kernels::linear_combination(1.0, a, 1.0, tmp, a);
  fft_forward_inplace(g, a.data());

  Field out(u.grid());
  kernels::linear_combination(1.0, u.coeffs(), -kI * ws.tau, a, out.coeffs());
  kernels::apply_table(ws.exp_tab, out.coeffs());
  return out;
}

Field step_lri2_fd_fused(const Field& u, const StepWorkspace& ws) {
  const Grid& g = *u.grid();
  const auto n = static_cast<std::size_t>(g.size());
  const double tau = ws.tau;

  cvec u_phys = to_phys(g, u.coeffs());
  cvec u2_phys(n);
  kernels::multiply(u_phys, u_phys, u2_phys);

  cvec ubar(n);
  kernels::conjugate_coeffs(g, u.coeffs(), ubar);

  cvec g1(n), g2(n), g3(n);
  kernels::apply_table_to(ws.phi1_2, ubar, g1);      // phi1(-2i tau L) conj u
  fft_inverse_inplace(g, g1.data());
  kernels::apply_table_to(ws.phi2_2, ubar, g2);      // phi2(-2i tau L) conj u
  fft_inverse_inplace(g, g2.data());
  kernels::apply_table_to(ws.exp_tab, ubar, g3);     // phi2(-2i tau L) e^{i tau L} conj u
  kernels::apply_table(ws.phi2_2, g3);
  fft_inverse_inplace(g, g3.data());

  cvec eu(u.coeffs().begin(), u.coeffs().end());     // e^{i tau L} u
  kernels::apply_table(ws.exp_tab, eu);
  cvec eu_phys = to_phys(g, eu);

  // line2 = (e^{i tau L}u) phi2(-i tau L)(e^{i tau L}V)
  //         + (e^{i tau L}u)^2 phi2(-2i tau L)(e^{i tau L} conj u)
  cvec line2(n), tmp(n);
  kernels::multiply(eu_phys, ws.ev_phi2_phys, line2);
  kernels::multiply(eu_phys, eu_phys, tmp);
  kernels::apply_table(g3, tmp);
  kernels::linear_combination(1.0, line2, 1.0, tmp, line2);
  fft_forward_inplace(g, line2.data());

  // combined = -i tau (u phi1 V + u^2 phi1 conj u)
  //            +i tau (u phi2 V + u^2 phi2 conj u) - tau^2/2 source
  cvec inner(n);
  kernels::multiply(u_phys, ws.v_phi1_phys, inner);
  kernels::apply_table_to(g1, u2_phys, tmp);
  kernels::linear_combination(1.0, inner, 1.0, tmp, inner);

  cvec phi2_inner(n);
  kernels::multiply(u_phys, ws.v_phi2_phys, phi2_inner);
  kernels::apply_table_to(g2, u2_phys, tmp);
  kernels::linear_combination(1.0, phi2_inner, 1.0, tmp, phi2_inner);

  cvec combined(n);
  kernels::linear_combination(-kI * tau, inner, kI * tau, phi2_inner, combined);
  cvec source = quadratic_source_phys(u_phys, ws);
  kernels::linear_combination(1.0, combined, -0.5 * tau * tau, source, combined);
  fft_forward_inplace(g, combined.data());

  Field out(u.grid());
  kernels::linear_combination(1.0, u.coeffs(), 1.0, combined, out.coeffs());
  kernels::apply_table(ws.exp_tab, out.coeffs());
  kernels::linear_combination(1.0, out.coeffs(), -kI * tau, line2, out.coeffs());
  return out;
}

Field step_baseline_fused(const Field& u, const StepWorkspace& ws) {
  const Grid& g = *u.grid();
  const double tau = ws.tau;
  switch (ws.scheme) {
    case SchemeId::LIE_SPLIT: {
      cvec c(u.coeffs().begin(), u.coeffs().end());
      kernels::apply_table(ws.exp_tab, c);
      fft_inverse_inplace(g, c.data());
      kernels::pointwise_kick(ws.v_phys, tau, c);
      fft_forward_inplace(g, c.data());
      return Field(u.grid(), std::move(c));
    }
    case SchemeId::STRANG_SPLIT: {
      cvec c = to_phys(g, u.coeffs());
      kernels::pointwise_kick(ws.v_phys, 0.5 * tau, c);
      fft_forward_inplace(g, c.data());
      kernels::apply_table(ws.exp_tab, c);
      fft_inverse_inplace(g, c.data());
      kernels::pointwise_kick(ws.v_phys, 0.5 * tau, c);
      fft_forward_inplace(g, c.data());
      return Field(u.grid(), std::move(c));
    }
    case SchemeId::EXP_EULER: {
      const auto n = static_cast<std::size_t>(g.size());
      cvec u_phys = to_phys(g, u.coeffs());
      cvec f(n), tmp(n);
      kernels::multiply(ws.v_phys, u_phys, f);
      kernels::multiply(u_phys, u_phys, tmp);
      cvec ubar_phys(n);
      kernels::conjugate_pointwise(u_phys, ubar_phys);
      kernels::apply_table(ubar_phys, tmp);
      kernels::linear_combination(-kI, f, -kI, tmp, f);  // f = -i(Vu + u^2 conj u)
      kernels::linear_combination(1.0, u_phys, tau, f, f);
      fft_forward_inplace(g, f.data());
      kernels::apply_table(ws.exp_tab, f);
      return Field(u.grid(), std::move(f));
    }
    default:
      throw std::invalid_argument("step_baseline: not a baseline scheme");
  }
}

Field step_with(const Field& u, const StepWorkspace& ws) {
  switch (ws.scheme) {
    case SchemeId::LRI1:
      if (dealiasing_enabled()) return step_lri1_reference(u, ws.V, ws.tau);
      return step_lri1_fused(u, ws);
    case SchemeId::LRI2_FD:
      if (dealiasing_enabled()) return step_lri2_fd_reference(u, ws.V, ws.tau);
      return step_lri2_fd_fused(u, ws);
    case SchemeId::LRI2_FILTERED:
      return step_lri2_filtered(u, ws.V, ws.tau, ws.conjugate_commutator);
    default:
      return step_baseline_fused(u, ws);
  }
}

void require_tau(double tau) {
  if (!(tau > 0.0))
    throw std::invalid_argument("time step must be positive");
}

} // namespace

std::string scheme_name(SchemeId id) {
  switch (id) {
    case SchemeId::LRI1: return "lri1";
    case SchemeId::LRI2_FD: return "lri2fd";
    case SchemeId::LRI2_FILTERED: return "lri2filtered";
    case SchemeId::LIE_SPLIT: return "lie";
    case SchemeId::STRANG_SPLIT: return "strang";
    case SchemeId::EXP_EULER: return "expeuler";
  }
  return "unknown";
}

SchemeId scheme_from_name(const std::string& name) {
  std::string s;
  for (char c : name) s += static_cast<char>(std::tolower(c));
  if (s == "lri1") return SchemeId::LRI1;
  if (s == "lri2fd" || s == "lri2") return SchemeId::LRI2_FD;
  if (s == "lri2filtered" || s == "lri2filt") return SchemeId::LRI2_FILTERED;
  if (s == "lie") return SchemeId::LIE_SPLIT;
  if (s == "strang") return SchemeId::STRANG_SPLIT;
  if (s == "expeuler") return SchemeId::EXP_EULER;
  throw std::invalid_argument("unknown scheme '" + name + "'");
}

Field nonlinearity_f(const Field& u, const Field& V) {
  require_same_grid(u, V);
  Field cubic = pointwise_mul(pointwise_mul(u, u), conj_field(u));
  return scaled(add(pointwise_mul(V, u), cubic), -kI);
}

Field commutator_C(const Field& u, const Field& v, const Field& w,
                   bool conjugate_middle) {
  require_same_grid(u, v);
  require_same_grid(u, w);
  const int d = u.grid()->dim();
  std::vector<Field> du = gradient(u);
  std::vector<Field> dv = gradient(v);
  std::vector<Field> dw = gradient(w);
  std::vector<Field> du2 = gradient(pointwise_mul(u, u));

  Field acc(u.grid());
  for (int l = 0; l < d; ++l) {
    acc = add(acc, pointwise_mul(dw[static_cast<std::size_t>(l)],
                                 du[static_cast<std::size_t>(l)]));
  }
  Field grad_sq(u.grid());
  for (int l = 0; l < d; ++l) {
    const Field& dul = du[static_cast<std::size_t>(l)];
    grad_sq = add(grad_sq,
                  pointwise_mul(dul, conjugate_middle ? conj_field(dul) : dul));
  }
  acc = add(acc, pointwise_mul(grad_sq, v));
  for (int l = 0; l < d; ++l) {
    acc = add(acc, pointwise_mul(du2[static_cast<std::size_t>(l)],
                                 dv[static_cast<std::size_t>(l)]));
  }
  return scaled(acc, -2.0 * kI);
}

Field quadratic_source(const Field& u, const Field& V) {
  require_same_grid(u, V);
  Field m = pointwise_mul(u, conj_field(u));  // |u|^2
  Field um = pointwise_mul(u, m);
  Field s = pointwise_mul(pointwise_mul(m, m), u);
  s = add(s, scaled(pointwise_mul(um, V), 3.0));
  s = sub(s, pointwise_mul(um, conj_field(V)));
  s = add(s, pointwise_mul(u, pointwise_mul(V, V)));
  return s;
}

Field step_lri1_reference(const Field& u, const Field& V, double tau) {
  require_tau(tau);
  require_same_grid(u, V);
  Field a = pointwise_mul(u, apply_phi(PhiKind::Phi1, V, 1.0, tau));
  Field b = pointwise_mul(pointwise_mul(u, u),
                          apply_phi(PhiKind::Phi1, conj_field(u), 2.0, tau));
  Field inner = sub(u, scaled(add(a, b), kI * tau));
  return apply_exp_laplacian(inner, tau);
}

Field step_lri2_fd_reference(const Field& u, const Field& V, double tau) {
  require_tau(tau);
  require_same_grid(u, V);
  Field u2 = pointwise_mul(u, u);
  Field ubar = conj_field(u);

  Field line1 = add(pointwise_mul(u, apply_phi(PhiKind::Phi1, V, 1.0, tau)),
                    pointwise_mul(u2, apply_phi(PhiKind::Phi1, ubar, 2.0, tau)));

  Field eu = apply_exp_laplacian(u, tau);
  Field line2 =
      add(pointwise_mul(eu, apply_phi(PhiKind::Phi2,
                                      apply_exp_laplacian(V, tau), 1.0, tau)),
          pointwise_mul(pointwise_mul(eu, eu),
                        apply_phi(PhiKind::Phi2,
                                  apply_exp_laplacian(ubar, tau), 2.0, tau)));

  Field line3 = add(pointwise_mul(u, apply_phi(PhiKind::Phi2, V, 1.0, tau)),
                    pointwise_mul(u2, apply_phi(PhiKind::Phi2, ubar, 2.0, tau)));

  Field inside = sub(u, scaled(line1, kI * tau));
  inside = add(inside, scaled(line3, kI * tau));
  inside = sub(inside, scaled(quadratic_source(u, V), 0.5 * tau * tau));
  return sub(apply_exp_laplacian(inside, tau), scaled(line2, kI * tau));
}

Field step_lri1(const Field& u, const Field& V, double tau) {
  require_tau(tau);
  require_same_grid(u, V);
  if (dealiasing_enabled()) return step_lri1_reference(u, V, tau);
  StepConfig cfg{tau, SchemeId::LRI1, false};
  return step_lri1_fused(u, make_workspace(V, cfg));
}

Field step_lri2_fd(const Field& u, const Field& V, double tau) {
  require_tau(tau);
  require_same_grid(u, V);
  if (dealiasing_enabled()) return step_lri2_fd_reference(u, V, tau);
  StepConfig cfg{tau, SchemeId::LRI2_FD, false};
  return step_lri2_fd_fused(u, make_workspace(V, cfg));
}

Field step_lri2_filtered(const Field& u, const Field& V, double tau,
                         bool conjugate_commutator) {
  require_tau(tau);
  require_same_grid(u, V);
  Field line1 = add(pointwise_mul(u, apply_phi(PhiKind::Phi1, V, 1.0, tau)),
                    pointwise_mul(pointwise_mul(u, u),
                                  apply_phi(PhiKind::Phi1, conj_field(u), 2.0, tau)));
  Field comm = commutator_C(u, apply_phi(PhiKind::Phi2, conj_field(u), 2.0, tau),
                            apply_phi(PhiKind::Phi2, V, 1.0, tau),
                            conjugate_commutator);
  Field inside = sub(u, scaled(line1, kI * tau));
  inside = sub(inside, scaled(apply_filter_psi(comm, tau), kI * tau * tau));
  inside = sub(inside, scaled(quadratic_source(u, V), 0.5 * tau * tau));
  return apply_exp_laplacian(inside, tau);
}

Field step_baseline(const Field& u, const Field& V, double tau, SchemeId which) {
  require_tau(tau);
  require_same_grid(u, V);
  if (which != SchemeId::LIE_SPLIT && which != SchemeId::STRANG_SPLIT &&
      which != SchemeId::EXP_EULER)
    throw std::invalid_argument("step_baseline: not a baseline scheme");
  StepConfig cfg{tau, which, false};
  return step_baseline_fused(u, make_workspace(V, cfg));
}

Field evolve(const Field& u0, const Field& V, const StepConfig& cfg,
             int n_steps, std::vector<Field>* snapshots, int snapshot_stride) {
  require_same_grid(u0, V);
  require_tau(cfg.tau);
  if (cfg.tau > 1.0)
    throw std::invalid_argument("time step must satisfy tau <= 1");
  if (n_steps < 0) throw std::invalid_argument("n_steps must be >= 0");

  StepWorkspace ws = make_workspace(V, cfg);
  Field u = u0;
  for (int step = 1; step <= n_steps; ++step) {
    u = step_with(u, ws);
    if (!kernels::all_finite(u.coeffs())) {
      std::ostringstream msg;
      msg << "solution blew up at step " << step << " (tau = " << cfg.tau
          << ", scheme = " << scheme_name(cfg.scheme) << ")";
      throw BlowupError(step, msg.str());
    }
    if (snapshots && snapshot_stride > 0 && step % snapshot_stride == 0)
      snapshots->push_back(u);
  }
  return u;
}

} // namespace lowreg
