#pragma once

#include <complex>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace olct {

using Complex = std::complex<double>;

/// Gauss-Legendre nodes and weights mapped onto [0, r_max]. Weights
/// integrate d r; callers supply the r of r dr themselves.
class RadialGrid {
 public:
  static RadialGrid gauss_legendre(int n, double r_max);

  /// Same rule on [0, factor * r_max].
  RadialGrid scaled(double factor) const;

  double r_max() const { return r_max_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  double node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
  double weight(int i) const { return weights_[static_cast<std::size_t>(i)]; }

  bool operator==(const RadialGrid&) const = default;
  /// Node-by-node agreement to rel_tol * r_max (grids rebuilt from text).
  bool matches(const RadialGrid& other, double rel_tol = 1e-13) const;

 private:
  RadialGrid(double r_max, std::vector<double> nodes, std::vector<double> weights)
      : r_max_(r_max), nodes_(std::move(nodes)), weights_(std::move(weights)) {}

  double r_max_ = 0.0;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// Uniform angular nodes theta_j = 2 pi j / n, n even and positive.
class AngularGrid {
 public:
  explicit AngularGrid(int n_theta);

  int size() const { return n_; }
  double node(int j) const;
  double weight() const;

  bool operator==(const AngularGrid&) const = default;

 private:
  int n_;
};

/// Smallest angular grid that carries orders |n| <= n_max without aliasing.
int required_angular_nodes(int n_max);

struct PolarPoint {
  double r = 0.0;
  double theta = 0.0;
};

/// Samples of an angularly 2 pi-periodic function, [radial node][angular node].
class PolarField {
 public:
  PolarField(RadialGrid rgrid, AngularGrid agrid);
  PolarField(RadialGrid rgrid, AngularGrid agrid, std::vector<Complex> samples);

  const RadialGrid& rgrid() const { return rgrid_; }
  const AngularGrid& agrid() const { return agrid_; }

  Complex& at(int i, int j) { return samples_[index(i, j)]; }
  const Complex& at(int i, int j) const { return samples_[index(i, j)]; }

  std::span<const Complex> samples() const { return samples_; }
  std::span<Complex> samples() { return samples_; }

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(agrid_.size()) +
           static_cast<std::size_t>(j);
  }

  RadialGrid rgrid_;
  AngularGrid agrid_;
  std::vector<Complex> samples_;
};

/// One harmonic coefficient f_n(r) on a radial grid.
struct RadialProfile {
  RadialGrid grid;
  int order = 0;
  std::vector<Complex> samples;

  RadialProfile(RadialGrid g, int n);
  RadialProfile(RadialGrid g, int n, std::vector<Complex> values);
};

/// Orders -n_max .. n_max, all on one radial grid.
class HarmonicSpectrum {
 public:
  HarmonicSpectrum(int n_max, RadialGrid rgrid);

  int n_max() const { return n_max_; }
  const RadialGrid& rgrid() const { return rgrid_; }

  std::span<Complex> profile(int n);
  std::span<const Complex> profile(int n) const;
  RadialProfile radial_profile(int n) const;

  /// Orders whose profile has any sample above threshold in magnitude.
  std::vector<int> support(double threshold = 0.0) const;

 private:
  std::size_t offset(int n) const;

  int n_max_;
  RadialGrid rgrid_;
  std::vector<Complex> data_;
};

/// Discrete projection f_n(r_i) = (1/n_theta) sum_j f(r_i, theta_j) e^{-i n theta_j}.
/// Throws Error(aliasing) when n_theta < 2 n_max + 2.
HarmonicSpectrum decompose(const PolarField& field, int n_max);

/// samples(i, j) = sum_n f_n(r_i) e^{i n theta_j}.
PolarField synthesize(const HarmonicSpectrum& spectrum, const AngularGrid& agrid);

// Built-in test signals.
namespace signal {
struct Gaussian { double sigma; };                    // e^{-r^2 / 2 sigma^2}
struct Vortex { double sigma; int k; };               // Gaussian * e^{i k theta}
struct Ring { double r0; double width; int k; };      // e^{-(r-r0)^2 / 2 w^2} e^{i k theta}
struct AngularCos { double sigma; int m; };           // Gaussian * (1 + cos m theta)
struct Zero {};
}  // namespace signal

using Signal = std::variant<signal::Gaussian, signal::Vortex, signal::Ring,
                            signal::AngularCos, signal::Zero>;

Complex evaluate(const Signal& s, double r, double theta);

/// Evaluates the signal on the grid. Truncation of the radial domain is the
/// caller's concern; decay_radius() gives a radius where the signal is below
/// 1e-12 of its peak.
PolarField builtin_signal(const Signal& s, const RadialGrid& rgrid,
                          const AngularGrid& agrid);

double decay_radius(const Signal& s);
bool radially_symmetric(const Signal& s);
/// Largest |n| with a nonzero harmonic.
int band_limit(const Signal& s);

/// "gaussian:s", "vortex:s,k", "ring:r0,w,k", "angular_cos:s,m", "zero".
Signal parse_signal(std::string_view text);
std::string to_string(const Signal& s);

/// Continuous L2 norm sqrt(sum_i w_i r_i sum_j |f_ij|^2 * 2 pi / n_theta).
double l2_norm(const PolarField& f);
double l2_norm(std::span<const Complex> profile, const RadialGrid& grid);

/// ||test - ref|| / ||ref||; ||test|| when ref is identically zero.
/// Throws Error(grid_mismatch) for incompatible grids.
double relative_l2(const PolarField& test, const PolarField& ref);
double relative_l2(std::span<const Complex> test, std::span<const Complex> ref,
                   const RadialGrid& grid);

PolarField operator+(const PolarField& x, const PolarField& y);
PolarField operator*(Complex s, const PolarField& x);
/// Pointwise product on identical grids.
PolarField pointwise_product(const PolarField& x, const PolarField& y);

/// "%.17g" formatting used for every numeric output.
std::string format_real(double v);

/// Header "r,theta,re,im", one row per sample in radial-major order.
void write_field_csv(std::ostream& out, const PolarField& field);

/// Reads a CSV written by write_field_csv. The radial nodes must form a
/// Gauss-Legendre grid on [0, r_max]; the grid is rebuilt from them.
PolarField read_field_csv(std::istream& in);

}  // namespace olct
