#include "olct/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "olct/detail/summation.hpp"
#include "olct/error.hpp"
#include "olct/parallel.hpp"
#include "olct/special_functions.hpp"

namespace olct {
namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kQuarterPi = 0.25 * std::numbers::pi;

// i^{-n}
Complex inverse_i_power(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

// Input-side phase of the polar kernel.
double input_phase(const OlctParams& A, double r, double theta) {
  return (A.a / (2.0 * A.b)) * r * r +
         (kSqrt2 * A.tau * r / A.b) * std::sin(theta + kQuarterPi);
}

// Output-side phase of the polar kernel.
double output_phase(const OlctParams& A, double rho, double phi) {
  return (A.d / (2.0 * A.b)) * rho * rho -
         (kSqrt2 * rho * (A.d * A.tau - A.b * A.eta) / A.b) *
             std::sin(phi + kQuarterPi);
}

// S(k, l) = sum_i sum_j g(i, j) e^{-i (r_i rho_k / beta) cos(theta_j - phi_l)},
// summed in ascending (i, j) order with compensation.
PolarField polar_sum(const std::vector<Complex>& g, const RadialGrid& in_r,
                     const AngularGrid& in_a, double beta, const RadialGrid& out_r,
                     const AngularGrid& out_a) {
  const int n_r = in_r.size();
  const int n_t = in_a.size();
  const int n_p = out_a.size();
  PolarField out(out_r, out_a);

  if (n_t == n_p) {
    // Uniform grids of equal size: cos(theta_j - phi_l) depends on (j - l) mod n.
    std::vector<double> ctab(static_cast<std::size_t>(n_t));
    for (int m = 0; m < n_t; ++m) ctab[static_cast<std::size_t>(m)] = std::cos(in_a.node(m));
    parallel_for(static_cast<std::size_t>(out_r.size()), [&](std::size_t kk) {
      const int k = static_cast<int>(kk);
      const double rho = out_r.node(k);
      std::vector<Complex> e(static_cast<std::size_t>(n_r) * static_cast<std::size_t>(n_t));
      for (int i = 0; i < n_r; ++i) {
        const double x = in_r.node(i) * rho / beta;
        for (int m = 0; m < n_t; ++m) {
          e[static_cast<std::size_t>(i * n_t + m)] =
              std::polar(1.0, -x * ctab[static_cast<std::size_t>(m)]);
        }
      }
      for (int l = 0; l < n_p; ++l) {
        detail::CompensatedSum acc;
        for (int i = 0; i < n_r; ++i) {
          const Complex* gi = g.data() + static_cast<std::size_t>(i * n_t);
          const Complex* ei = e.data() + static_cast<std::size_t>(i * n_t);
          for (int j = 0; j < n_t; ++j) {
            const int m = j >= l ? j - l : j - l + n_t;
            acc.add(gi[j] * ei[m]);
          }
        }
        out.at(k, l) = acc.value();
      }
    });
    return out;
  }

  std::vector<double> ctab(static_cast<std::size_t>(n_t) * static_cast<std::size_t>(n_p));
  for (int j = 0; j < n_t; ++j) {
    for (int l = 0; l < n_p; ++l) {
      ctab[static_cast<std::size_t>(j * n_p + l)] = std::cos(in_a.node(j) - out_a.node(l));
    }
  }
  parallel_for(static_cast<std::size_t>(out_r.size()), [&](std::size_t kk) {
    const int k = static_cast<int>(kk);
    const double rho = out_r.node(k);
    for (int l = 0; l < n_p; ++l) {
      detail::CompensatedSum acc;
      for (int i = 0; i < n_r; ++i) {
        const double x = in_r.node(i) * rho / beta;
        for (int j = 0; j < n_t; ++j) {
          acc.add(g[static_cast<std::size_t>(i * n_t + j)] *
                  std::polar(1.0, -x * ctab[static_cast<std::size_t>(j * n_p + l)]));
        }
      }
      out.at(k, l) = acc.value();
    }
  });
  return out;
}

// Kernel-level polar transform for any valid A (b may be negative).
PolarField apply_polar_kernel(const PolarField& f, const OlctParams& A,
                              const RadialGrid& out_r, const AngularGrid& out_a) {
  validate(A);
  const Complex lead = kernel_scale(A.b) * ell_factor(A);
  const RadialGrid& in_r = f.rgrid();
  const AngularGrid& in_a = f.agrid();
  std::vector<Complex> g(f.samples().size());
  for (int i = 0; i < in_r.size(); ++i) {
    const double r = in_r.node(i);
    const double w = in_r.weight(i) * r * in_a.weight();
    for (int j = 0; j < in_a.size(); ++j) {
      g[static_cast<std::size_t>(i * in_a.size() + j)] =
          f.at(i, j) * w * std::polar(1.0, input_phase(A, r, in_a.node(j)));
    }
  }
  PolarField out = polar_sum(g, in_r, in_a, A.b, out_r, out_a);
  for (int k = 0; k < out_r.size(); ++k) {
    for (int l = 0; l < out_a.size(); ++l) {
      out.at(k, l) *= lead * std::polar(1.0, output_phase(A, out_r.node(k), out_a.node(l)));
    }
  }
  return out;
}

// J_n(r_i rho_k / beta) for n = 0 .. n_max, laid out [k][i][n].
class BesselTable {
 public:
  BesselTable(const RadialGrid& in, const RadialGrid& out, double beta, int n_max)
      : n_in_(in.size()), stride_(n_max + 1) {
    values_.resize(static_cast<std::size_t>(out.size()) * static_cast<std::size_t>(n_in_) *
                   static_cast<std::size_t>(stride_));
    parallel_for(static_cast<std::size_t>(out.size()), [&](std::size_t k) {
      for (int i = 0; i < n_in_; ++i) {
        const double x = in.node(i) * out.node(static_cast<int>(k)) / beta;
        bessel_j_orders(x, std::span<double>(values_.data() + offset(static_cast<int>(k), i),
                                             static_cast<std::size_t>(stride_)));
      }
    });
  }

  double at(int n, int i, int k) const {
    const int an = std::abs(n);
    const double v = values_[offset(k, i) + static_cast<std::size_t>(an)];
    return (n < 0 && an % 2 != 0) ? -v : v;
  }

 private:
  std::size_t offset(int k, int i) const {
    return (static_cast<std::size_t>(k) * static_cast<std::size_t>(n_in_) +
            static_cast<std::size_t>(i)) *
           static_cast<std::size_t>(stride_);
  }

  int n_in_;
  int stride_;
  std::vector<double> values_;
};

// Offset canonical Hankel transform for any valid A, using a prebuilt table.
std::vector<Complex> olcht_core(std::span<const Complex> f, const RadialGrid& in,
                                int n, const OlctParams& A, const RadialGrid& out,
                                WFactorMode mode, const BesselTable& table) {
  const Complex lead = inverse_i_power(n) * ell_factor(A) / std::abs(A.b);
  std::vector<Complex> weighted(static_cast<std::size_t>(in.size()));
  for (int i = 0; i < in.size(); ++i) {
    const double r = in.node(i);
    const double w2 = w_sum(kSqrt2 * A.tau * r / A.b, mode);
    weighted[static_cast<std::size_t>(i)] =
        in.weight(i) * r * w2 * std::polar(1.0, (A.a / (2.0 * A.b)) * r * r) *
        f[static_cast<std::size_t>(i)];
  }
  std::vector<Complex> result(static_cast<std::size_t>(out.size()));
  for (int k = 0; k < out.size(); ++k) {
    const double rho = out.node(k);
    detail::CompensatedSum acc;
    for (int i = 0; i < in.size(); ++i) {
      acc.add(weighted[static_cast<std::size_t>(i)] * table.at(n, i, k));
    }
    const double w1 = w_sum(kSqrt2 * rho * (A.d * A.tau - A.b * A.eta) / A.b, mode);
    result[static_cast<std::size_t>(k)] =
        lead * w1 * std::polar(1.0, (A.d / (2.0 * A.b)) * rho * rho) * acc.value();
  }
  return result;
}

void check_order(int n) {
  if (std::abs(n) > kMaxBesselOrder) {
    throw Error(ErrorCode::order_cap,
                "transform order " + std::to_string(n) + " exceeds the Bessel order cap");
  }
}

}  // namespace

Complex olct_kernel_polar(const OlctParams& A, double r, double theta, double rho,
                          double phi) {
  validate(A);
  const double phase = input_phase(A, r, theta) + output_phase(A, rho, phi) -
                       (r * rho / A.b) * std::cos(theta - phi);
  return kernel_scale(A.b) * ell_factor(A) * std::polar(1.0, phase);
}

Complex olct_kernel_cartesian(const OlctParams& A, double t1, double t2, double u1,
                              double u2) {
  validate(A);
  const double phase = (A.a / (2.0 * A.b)) * (t1 * t1 + t2 * t2) +
                       (t1 * (A.tau - u1) + t2 * (A.tau - u2)) / A.b -
                       (A.d * A.tau - A.b * A.eta) * (u1 + u2) / A.b +
                       (A.d / (2.0 * A.b)) * (u1 * u1 + u2 * u2);
  return prefactors(A).k_A * std::polar(1.0, phase);
}

CartesianField sample_cartesian(const Signal& s, const CartesianGrid& grid) {
  if (grid.n < 2 || !(grid.half_width > 0.0)) {
    throw Error(ErrorCode::precondition, "Cartesian grid needs n >= 2 and half_width > 0");
  }
  CartesianField f{grid, std::vector<Complex>(static_cast<std::size_t>(grid.n * grid.n))};
  for (int k1 = 0; k1 < grid.n; ++k1) {
    for (int k2 = 0; k2 < grid.n; ++k2) {
      const double t1 = grid.node(k1);
      const double t2 = grid.node(k2);
      f.samples[static_cast<std::size_t>(k1 * grid.n + k2)] =
          evaluate(s, std::hypot(t1, t2), std::atan2(t2, t1));
    }
  }
  return f;
}

std::vector<Complex> olct2d_cartesian(const CartesianField& f, const OlctParams& A,
                                      std::span<const Point2> outputs) {
  require_forward(A);
  const CartesianGrid& grid = f.grid;
  const int n = grid.n;
  if (f.samples.size() != static_cast<std::size_t>(n * n)) {
    throw Error(ErrorCode::grid_mismatch, "Cartesian field size does not match grid");
  }
  const Complex k_A = prefactors(A).k_A;
  const double h2 = grid.step() * grid.step();
  std::vector<Complex> g(f.samples.size());
  for (int k1 = 0; k1 < n; ++k1) {
    for (int k2 = 0; k2 < n; ++k2) {
      const double t1 = grid.node(k1);
      const double t2 = grid.node(k2);
      g[static_cast<std::size_t>(k1 * n + k2)] =
          f.samples[static_cast<std::size_t>(k1 * n + k2)] * h2 *
          std::polar(1.0, (A.a / (2.0 * A.b)) * (t1 * t1 + t2 * t2));
    }
  }
  std::vector<Complex> out(outputs.size());
  parallel_for(outputs.size(), [&](std::size_t p) {
    const double u1 = outputs[p].u1;
    const double u2 = outputs[p].u2;
    std::vector<Complex> e1(static_cast<std::size_t>(n)), e2(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      const double t = grid.node(k);
      e1[static_cast<std::size_t>(k)] = std::polar(1.0, t * (A.tau - u1) / A.b);
      e2[static_cast<std::size_t>(k)] = std::polar(1.0, t * (A.tau - u2) / A.b);
    }
    detail::CompensatedSum acc;
    for (int k1 = 0; k1 < n; ++k1) {
      for (int k2 = 0; k2 < n; ++k2) {
        acc.add(g[static_cast<std::size_t>(k1 * n + k2)] * e1[static_cast<std::size_t>(k1)] *
                e2[static_cast<std::size_t>(k2)]);
      }
    }
    const double phase = -(A.d * A.tau - A.b * A.eta) * (u1 + u2) / A.b +
                         (A.d / (2.0 * A.b)) * (u1 * u1 + u2 * u2);
    out[p] = k_A * std::polar(1.0, phase) * acc.value();
  });
  return out;
}

PolarField olct2d_cartesian(const CartesianField& f, const OlctParams& A,
                            const RadialGrid& out_r, const AngularGrid& out_a) {
  std::vector<Point2> points;
  points.reserve(static_cast<std::size_t>(out_r.size() * out_a.size()));
  for (int k = 0; k < out_r.size(); ++k) {
    for (int l = 0; l < out_a.size(); ++l) {
      const double rho = out_r.node(k);
      const double phi = out_a.node(l);
      points.push_back({rho * std::cos(phi), rho * std::sin(phi)});
    }
  }
  return PolarField(out_r, out_a, olct2d_cartesian(f, A, points));
}

RadialGrid default_output_grid(const OlctParams& A, const RadialGrid& in) {
  const double rho_max = in.r_max() * std::max(1.0, std::hypot(A.a, A.b)) +
                         kSqrt2 * (std::abs(A.tau) + std::abs(A.eta));
  return RadialGrid::gauss_legendre(in.size(), rho_max);
}

PolarField olct2d_polar(const PolarField& f, const OlctParams& A,
                        const RadialGrid& out_r, const AngularGrid& out_a) {
  require_forward(A);
  return apply_polar_kernel(f, A, out_r, out_a);
}

PolarField olct2d_polar(const PolarField& f, const OlctParams& A) {
  require_forward(A);
  return apply_polar_kernel(f, A, default_output_grid(A, f.rgrid()), f.agrid());
}

PolarField inverse_olct2d_polar(const PolarField& F, const OlctParams& A,
                                const RadialGrid& out_r, const AngularGrid& out_a) {
  require_forward(A);
  const Complex c = inversion_constant(A);
  return c * apply_polar_kernel(F, inverse_params(A), out_r, out_a);
}

PolarField ft2d_polar(const PolarField& f, const RadialGrid& out_r,
                      const AngularGrid& out_a) {
  const RadialGrid& in_r = f.rgrid();
  const AngularGrid& in_a = f.agrid();
  std::vector<Complex> g(f.samples().size());
  for (int i = 0; i < in_r.size(); ++i) {
    const double w = in_r.weight(i) * in_r.node(i) * in_a.weight();
    for (int j = 0; j < in_a.size(); ++j) {
      g[static_cast<std::size_t>(i * in_a.size() + j)] = f.at(i, j) * w;
    }
  }
  PolarField out = polar_sum(g, in_r, in_a, 1.0, out_r, out_a);
  return (1.0 / (2.0 * std::numbers::pi)) * out;
}

PolarField olct_from_ft(const PolarField& f, const OlctParams& A,
                        const RadialGrid& out_r, const AngularGrid& out_a) {
  require_forward(A);
  const Complex lead = ell_factor(A) / std::abs(A.b);
  PolarField chirped = f;
  for (int i = 0; i < f.rgrid().size(); ++i) {
    for (int j = 0; j < f.agrid().size(); ++j) {
      chirped.at(i, j) *= std::polar(1.0, input_phase(A, f.rgrid().node(i), f.agrid().node(j)));
    }
  }
  const PolarField spectrum = ft2d_polar(chirped, out_r.scaled(1.0 / A.b), out_a);
  PolarField out(out_r, out_a);
  for (int k = 0; k < out_r.size(); ++k) {
    for (int l = 0; l < out_a.size(); ++l) {
      out.at(k, l) = lead *
                     std::polar(1.0, output_phase(A, out_r.node(k), out_a.node(l))) *
                     spectrum.at(k, l);
    }
  }
  return out;
}

RadialProfile hankel(const RadialProfile& f, int n, const RadialGrid& out) {
  check_order(n);
  const RadialGrid& in = f.grid;
  std::vector<Complex> weighted(static_cast<std::size_t>(in.size()));
  for (int i = 0; i < in.size(); ++i) {
    weighted[static_cast<std::size_t>(i)] =
        in.weight(i) * in.node(i) * f.samples[static_cast<std::size_t>(i)];
  }
  RadialProfile result(out, n);
  parallel_for(static_cast<std::size_t>(out.size()), [&](std::size_t k) {
    const double rho = out.node(static_cast<int>(k));
    detail::CompensatedSum acc;
    for (int i = 0; i < in.size(); ++i) {
      acc.add(weighted[static_cast<std::size_t>(i)] * bessel_j(n, rho * in.node(i)));
    }
    result.samples[k] = acc.value();
  });
  return result;
}

RadialProfile olcht(const RadialProfile& f, int n, const OlctParams& A,
                    const RadialGrid& out, WFactorMode mode) {
  require_forward(A);
  check_order(n);
  const BesselTable table(f.grid, out, A.b, std::abs(n));
  return RadialProfile(out, n, olcht_core(f.samples, f.grid, n, A, out, mode, table));
}

RadialProfile olcht_inverse(const RadialProfile& F, int n, const OlctParams& A,
                            const RadialGrid& out) {
  require_forward(A);
  check_order(n);
  const OlctParams inv = inverse_params(A);
  const BesselTable table(F.grid, out, inv.b, std::abs(n));
  std::vector<Complex> values =
      olcht_core(F.samples, F.grid, n, inv, out, WFactorMode::closed_form(), table);
  const Complex c = inversion_constant(A);
  for (auto& v : values) v *= c;
  return RadialProfile(out, n, std::move(values));
}

RadialProfile olcht_from_ht(const RadialProfile& f, int n, const OlctParams& A,
                            const RadialGrid& out, WFactorMode mode) {
  require_forward(A);
  check_order(n);
  RadialProfile chirped = f;
  for (int i = 0; i < f.grid.size(); ++i) {
    const double r = f.grid.node(i);
    chirped.samples[static_cast<std::size_t>(i)] *=
        w_sum(kSqrt2 * A.tau * r / A.b, mode) * std::polar(1.0, (A.a / (2.0 * A.b)) * r * r);
  }
  const RadialProfile ht = hankel(chirped, n, out.scaled(1.0 / A.b));
  const Complex lead = inverse_i_power(n) * ell_factor(A) / std::abs(A.b);
  RadialProfile result(out, n);
  for (int k = 0; k < out.size(); ++k) {
    const double rho = out.node(k);
    const double w1 = w_sum(kSqrt2 * rho * (A.d * A.tau - A.b * A.eta) / A.b, mode);
    result.samples[static_cast<std::size_t>(k)] =
        lead * w1 * std::polar(1.0, (A.d / (2.0 * A.b)) * rho * rho) *
        ht.samples[static_cast<std::size_t>(k)];
  }
  return result;
}

HarmonicSpectrum olct_spectrum(const PolarField& f, const OlctParams& A, int n_max,
                               const RadialGrid& out_r) {
  require_forward(A);
  check_order(n_max);
  const HarmonicSpectrum input = decompose(f, n_max);
  const BesselTable table(f.rgrid(), out_r, A.b, n_max);
  HarmonicSpectrum out(n_max, out_r);
  parallel_for(static_cast<std::size_t>(2 * n_max + 1), [&](std::size_t idx) {
    const int n = static_cast<int>(idx) - n_max;
    const auto values = olcht_core(input.profile(n), f.rgrid(), n, A, out_r,
                                   WFactorMode::closed_form(), table);
    std::copy(values.begin(), values.end(), out.profile(n).begin());
  });
  return out;
}

HarmonicSpectrum inverse_olct_spectrum(const HarmonicSpectrum& F, const OlctParams& A,
                                       const RadialGrid& out_r) {
  require_forward(A);
  const int n_max = F.n_max();
  check_order(n_max);
  const OlctParams inv = inverse_params(A);
  const Complex c = inversion_constant(A);
  const BesselTable table(F.rgrid(), out_r, inv.b, n_max);
  HarmonicSpectrum out(n_max, out_r);
  parallel_for(static_cast<std::size_t>(2 * n_max + 1), [&](std::size_t idx) {
    const int n = static_cast<int>(idx) - n_max;
    const auto values = olcht_core(F.profile(n), F.rgrid(), n, inv, out_r,
                                   WFactorMode::closed_form(), table);
    auto dst = out.profile(n);
    for (std::size_t k = 0; k < values.size(); ++k) dst[k] = c * values[k];
  });
  return out;
}

PolarField olct_via_harmonics(const PolarField& f, const OlctParams& A, int n_max,
                              const RadialGrid& out_r, const AngularGrid& out_a) {
  return synthesize(olct_spectrum(f, A, n_max, out_r), out_a);
}

}  // namespace olct
