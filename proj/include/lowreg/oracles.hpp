#pragma once

#include <vector>

#include "lowreg/field.hpp"

namespace lowreg {

/// Gauss-Legendre nodes/weights on [0, 1] (Newton iteration on P_n).
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
QuadratureRule gauss_legendre(int n);

/// Composite Gauss-Legendre quadrature (4 panels, n_quad nodes each) of the
/// principal oscillatory integral
///   J1(tau, v) = int_0^tau e^{-i z L}[V e^{i z L}v + (e^{i z L}v)^2 e^{-i z L}conj v] dz
/// with L the Laplacian. Test oracle for the phi1 discretization.
Field oscillatory_integral_oracle(const Field& u, const Field& V, double tau,
                                  int n_quad);

/// Mode-by-mode construction of one first-order step from the Fourier
/// convolution structure of J1: the potential term sums phi1(i tau l1^2)
/// V_{l1} u_{l2} over l1+l2 = k and the cubic term sums
/// phi1(2 i tau k1^2) conj(u_{k1}) u_{k2} u_{k3} over -k1+k2+k3 = k, with
/// out-of-range sums folded onto the grid exactly as the circular products
/// do. Brute force (O(N^3)); independent of the FFT path.
Field lri1_step_convolution_oracle(const Field& u, const Field& V, double tau);

} // namespace lowreg
