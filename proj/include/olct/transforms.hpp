#pragma once

#include <span>
#include <vector>

#include "olct/fields.hpp"
#include "olct/params.hpp"

namespace olct {

/// Polar kernel P_A(r, theta; rho, phi) = ell_A / (2 pi |b|) e^{i phase}, with
/// phase = (a/2b) r^2 + (sqrt2 tau r / b) sin(theta + pi/4)
///       - (sqrt2 rho (d tau - b eta) / b) sin(phi + pi/4)
///       - (r rho / b) cos(theta - phi) + (d/2b) rho^2.
Complex olct_kernel_polar(const OlctParams& A, double r, double theta, double rho,
                          double phi);

/// Cartesian kernel h_A(t, u), offsets applied equally on both axes.
Complex olct_kernel_cartesian(const OlctParams& A, double t1, double t2,
                              double u1, double u2);

/// Uniform midpoint grid on [-half_width, half_width]^2.
struct CartesianGrid {
  int n = 64;
  double half_width = 8.0;

  double step() const { return 2.0 * half_width / n; }
  double node(int k) const { return -half_width + (k + 0.5) * step(); }
};

struct CartesianField {
  CartesianGrid grid;
  std::vector<Complex> samples;  // [k1 * n + k2]
};

struct Point2 {
  double u1 = 0.0;
  double u2 = 0.0;
};

CartesianField sample_cartesian(const Signal& s, const CartesianGrid& grid);

/// Tensor-product quadrature of the Cartesian transform at arbitrary output
/// points. Requires b > 0.
std::vector<Complex> olct2d_cartesian(const CartesianField& f, const OlctParams& A,
                                      std::span<const Point2> outputs);

/// Cartesian transform evaluated at the nodes of a polar output grid.
PolarField olct2d_cartesian(const CartesianField& f, const OlctParams& A,
                            const RadialGrid& out_r, const AngularGrid& out_a);

/// Output radial grid with as many nodes as `in`, on [0, rho_max] where
/// rho_max = r_max * max(1, hypot(a, b)) + sqrt2 (|tau| + |eta|).
RadialGrid default_output_grid(const OlctParams& A, const RadialGrid& in);

/// Brute-force polar quadrature, O(n_r n_theta n_rho n_phi). Requires b > 0.
PolarField olct2d_polar(const PolarField& f, const OlctParams& A,
                        const RadialGrid& out_r, const AngularGrid& out_a);
PolarField olct2d_polar(const PolarField& f, const OlctParams& A);

/// Applies the kernel of A^{-1} (whose b is negative) times the inversion
/// constant C of A. A itself must satisfy b > 0.
PolarField inverse_olct2d_polar(const PolarField& F, const OlctParams& A,
                                const RadialGrid& out_r, const AngularGrid& out_a);

/// (1/2pi) sum f(r, theta) e^{-i r rho cos(theta - phi)} r dr dtheta.
PolarField ft2d_polar(const PolarField& f, const RadialGrid& out_r,
                      const AngularGrid& out_a);

/// OLCT through the chirp relation with the Fourier transform: chirp the input,
/// Fourier transform, read at rho / b, chirp the output.
PolarField olct_from_ft(const PolarField& f, const OlctParams& A,
                        const RadialGrid& out_r, const AngularGrid& out_a);

/// Classical order-n Hankel transform, int f(r) J_n(rho r) r dr.
RadialProfile hankel(const RadialProfile& f, int n, const RadialGrid& out);

/// Order-n offset canonical Hankel transform,
///   i^{-n} (w1 ell_A / |b|) e^{i (d/2b) rho^2} int w2 e^{i (a/2b) r^2} J_n(r rho / b) f(r) r dr.
/// Negative n uses J_{-n} = (-1)^n J_n. Requires b > 0.
RadialProfile olcht(const RadialProfile& f, int n, const OlctParams& A,
                    const RadialGrid& out,
                    WFactorMode mode = WFactorMode::closed_form());

/// Exact inverse of olcht in closed-form mode: C * H_n^{A^{-1}}.
RadialProfile olcht_inverse(const RadialProfile& F, int n, const OlctParams& A,
                            const RadialGrid& out);

/// olcht through the Hankel transform of the chirped profile, read at rho / b.
RadialProfile olcht_from_ht(const RadialProfile& f, int n, const OlctParams& A,
                            const RadialGrid& out,
                            WFactorMode mode = WFactorMode::closed_form());

/// Harmonic coefficients F_n^A = H_n^A[f_n] for |n| <= n_max.
HarmonicSpectrum olct_spectrum(const PolarField& f, const OlctParams& A, int n_max,
                               const RadialGrid& out_r);

/// Applies olcht_inverse to every order of a spectrum.
HarmonicSpectrum inverse_olct_spectrum(const HarmonicSpectrum& F, const OlctParams& A,
                                       const RadialGrid& out_r);

/// Fast path: decompose, transform each order, synthesize.
PolarField olct_via_harmonics(const PolarField& f, const OlctParams& A, int n_max,
                              const RadialGrid& out_r, const AngularGrid& out_a);

}  // namespace olct
