#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <variant>

namespace olct {

/// Six-parameter tuple A = (a, b, c, d, tau, eta) with ad - bc = 1.
/// tau is the spatial offset and eta the frequency offset; both act equally
/// on the two Cartesian axes.
struct OlctParams {
  double a = 0.0;
  double b = 1.0;
  double c = -1.0;
  double d = 0.0;
  double tau = 0.0;
  double eta = 0.0;

  bool operator==(const OlctParams&) const = default;

  bool offset_free() const { return tau == 0.0 && eta == 0.0; }
};

inline constexpr double kSymplecticTolerance = 1e-12;

/// Checks |ad - bc - 1| <= 1e-12, b != 0 and finiteness. Throws
/// Error(invalid_params).
void validate(const OlctParams& p);

/// validate() plus b > 0, the condition for user-facing forward transforms.
void require_forward(const OlctParams& p);

OlctParams make_params(double a, double b, double c, double d, double tau = 0.0,
                       double eta = 0.0);

/// A^{-1} = (d, -b, -c, a, b*eta - d*tau, c*tau - a*eta).
OlctParams inverse_params(const OlctParams& p);

/// Element-wise sign flip of all six entries; ad - bc is unchanged.
OlctParams negate_params(const OlctParams& p);

/// Magnitude of the kernel constant, 1 / (2 pi |b|).
double kernel_scale(double b);

struct PrefactorSet {
  std::complex<double> k_A;    // Cartesian kernel constant
  std::complex<double> ell_A;  // polar kernel phase
  std::complex<double> c_inv;  // inversion constant C
};

/// Throws Error(singular_params) when a = 0 with tau != 0, or d = 0 with
/// d*tau - b*eta != 0; the polar kernel phase is undefined there.
PrefactorSet prefactors(const OlctParams& p);

std::complex<double> ell_factor(const OlctParams& p);
std::complex<double> inversion_constant(const OlctParams& p);

/// How the scalar offset sums w1, w2 are evaluated.
struct WFactorMode {
  enum class Kind { closed_form, truncated_sum };
  Kind kind = Kind::closed_form;
  int n_max = 0;

  static WFactorMode closed_form() { return {}; }
  static WFactorMode truncated_sum(int n_max) {
    return {Kind::truncated_sum, n_max};
  }
};

/// sum_m J_m(x): exactly 1 in closed form, partial sum over |m| <= n_max
/// otherwise.
double w_sum(double x, WFactorMode mode);

/// e^{-i[(b eta - d tau)^2 / 2bd + tau^2 (bc - ad)^2 / 2ab]}, same
/// singularity policy as prefactors().
std::complex<double> w3_factor(const OlctParams& p);

struct WFactors {
  double w1 = 1.0;
  double w2 = 1.0;
  std::complex<double> w3 = 1.0;
};

WFactors w_factors(const OlctParams& p, double r, double rho, WFactorMode mode);

// Named members of the transform family. Kinds with b = 0 exist so callers get
// a clear unsupported-branch error instead of a silent degenerate tuple.
namespace preset {
struct Olct { OlctParams params; };
struct Lct { double a, b, c, d; };
struct Frft { double theta; };
struct Ft {};
struct Ofrft { double theta, tau, eta; };
struct Fresnel { double b; };
struct FreqMod { double eta; };
struct TimeScale { double d; };
struct TimeShift { double tau; };
}  // namespace preset

using SpecialCase =
    std::variant<preset::Olct, preset::Lct, preset::Frft, preset::Ft,
                 preset::Ofrft, preset::Fresnel, preset::FreqMod,
                 preset::TimeScale, preset::TimeShift>;

OlctParams special_case(const SpecialCase& kind);

/// Parses "ft", "frft:theta", "lct:a,b,c,d", "fresnel:b", "ofrft:theta,tau,eta".
/// Angles accept "pi" forms such as "pi/3" or "2*pi/3".
SpecialCase parse_preset(std::string_view text);

/// Parses "a,b,c,d,tau,eta" and validates.
OlctParams parse_params(std::string_view text);

/// Parses a real number, also accepting [k*]pi[/m].
double parse_real(std::string_view text);

std::string to_string(const OlctParams& p);

}  // namespace olct
