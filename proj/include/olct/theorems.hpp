#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "olct/fields.hpp"
#include "olct/params.hpp"

namespace olct {

/// Polar form of a Cartesian shift t0 = (r0 cos theta0, r0 sin theta0).
struct ShiftSpec {
  double r0 = 0.0;
  double theta0 = 0.0;
};

struct VerificationReport {
  std::string identity;
  std::string signal;
  std::string grid;
  OlctParams params;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  /// Whether a failure of this identity makes the suite fail.
  bool required = false;
  std::map<int, double> per_order;
  std::map<std::string, double> details;
};

/// Reconstructs f(t - t0) at the given points from the harmonic spectrum
/// F_n = H_n^A[f_n] (on its own radial grid, used as the rho quadrature):
///   sum_n (-i)^{n/2} 2 pi C w3 K_{A^-1} gamma e^{i n (theta - theta0)}
///     int F_n(rho) e^{-i (d/2b) rho^2} J_n(r rho/b) J_n(r0 rho/b)
///         J_n(sqrt2 rho (b eta - d tau)/b) rho d rho.
std::vector<Complex> shift_reconstruct(const HarmonicSpectrum& spectrum,
                                       const OlctParams& A, const ShiftSpec& shift,
                                       std::span<const PolarPoint> points);

struct SuiteConfig {
  int n_r = 128;
  double r_max = 8.0;
  int n_theta = 64;
  int n_max = 16;
  /// Tolerance of the two-path and round-trip identities.
  double tol = 1e-6;
};

std::string grid_summary(const SuiteConfig& config);

/// Compares shift_reconstruct on the input grid against the signal evaluated
/// at t - t0.
VerificationReport verify_shift(const Signal& f, const OlctParams& A,
                                const ShiftSpec& shift, const SuiteConfig& config,
                                double tolerance);

/// Radial grid of a convolution: n_f + n_g nodes on [0, R_f + R_g].
RadialGrid convolution_grid(const RadialGrid& f, const RadialGrid& g);

/// Output grid of the transforms involved in a convolution.
RadialGrid convolution_spectrum_grid(const OlctParams& A, const RadialGrid& f);

/// f *^A g through Z_k = sum_m G_m F_{k-m}, inverse OLCHT per order and
/// synthesis on f's angular grid. Throws Error(truncation) when products land
/// outside |k| <= n_max with non-negligible weight.
PolarField olct_convolve(const PolarField& f, const PolarField& g, const OlctParams& A,
                         int n_max);

/// Transform of the convolution against the pointwise product F^A G^A of the
/// direct transforms. per_order holds the order-k residuals of
/// Z_k = sum_m G_m F_{k-m}, scaled so they add in quadrature.
VerificationReport verify_convolution(const PolarField& f, const PolarField& g,
                                      const OlctParams& A, int n_max, double tolerance);

/// Every identity for one signal and parameter tuple, in a fixed order.
std::vector<VerificationReport> run_identity_suite(const Signal& signal,
                                                   const OlctParams& A,
                                                   const SuiteConfig& config);

bool required_pass(std::span<const VerificationReport> reports);

}  // namespace olct
