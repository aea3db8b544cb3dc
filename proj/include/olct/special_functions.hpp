#pragma once

#include <complex>
#include <span>

namespace olct {

/// Largest |n| accepted by the Bessel routines.
inline constexpr int kMaxBesselOrder = 256;

/// J_n(x) for integer n, real x. Absolute error below 1e-12 for |n| <= 64 and
/// |x| <= 100. Throws Error(domain) for non-finite x and Error(order_cap) when
/// |n| > kMaxBesselOrder.
double bessel_j(int n, double x);

/// Fills out[m] = J_m(x) for m = 0 .. out.size()-1 from a single backward
/// recurrence. out.size()-1 must not exceed kMaxBesselOrder.
void bessel_j_orders(double x, std::span<double> out);

/// Truncated Jacobi-Anger sum  sum_{m=-n_max}^{n_max} J_m(x) e^{-i m theta},
/// which tends to e^{-i x sin(theta)}.
std::complex<double> plane_wave_expansion(double x, double theta, int n_max);

}  // namespace olct
