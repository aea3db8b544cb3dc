#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "olct/error.hpp"
#include "olct/parallel.hpp"
#include "olct/special_functions.hpp"
#include "olct/transforms.hpp"
#include "oracles.hpp"

using namespace olct;

namespace {

const RadialGrid kGrid = RadialGrid::gauss_legendre(128, 8.0);
const AngularGrid kAngles(64);

double max_abs_error(const PolarField& f, auto&& exact) {
  double worst = 0.0;
  for (int i = 0; i < f.rgrid().size(); ++i) {
    for (int j = 0; j < f.agrid().size(); ++j) {
      worst = std::max(worst, std::abs(f.at(i, j) - exact(f.rgrid().node(i), f.agrid().node(j))));
    }
  }
  return worst;
}

RadialProfile smooth_profile(int n, const RadialGrid& g) {
  RadialProfile p(g, n);
  for (int i = 0; i < g.size(); ++i) {
    const double r = g.node(i);
    p.samples[i] = std::pow(r, std::abs(n)) * std::exp(-r * r / 2);
  }
  return p;
}

}  // namespace

TEST_CASE("kernels agree at offset-free parameters") {
  const OlctParams A{1, 1, 0, 1, 0, 0};
  const double r = 1.3, th = 0.4, rho = 2.1, ph = 2.5;
  const auto p = olct_kernel_polar(A, r, th, rho, ph);
  const auto c = olct_kernel_cartesian(A, r * std::cos(th), r * std::sin(th), rho * std::cos(ph),
                                       rho * std::sin(ph));
  CHECK(std::abs(p - c) < 1e-15);
}

TEST_CASE("polar kernel differs from the Cartesian one by a constant phase with offsets") {
  const OlctParams A{1, 1, 0, 1, 0.3, 0.7};
  const double psi = std::arg(ell_factor(A)) - A.d * A.tau * A.tau / (2 * A.b);
  for (double r : {0.5, 2.0}) {
    for (double rho : {0.1, 3.0}) {
      const auto p = olct_kernel_polar(A, r, 0.3, rho, 1.1);
      const auto c = olct_kernel_cartesian(A, r * std::cos(0.3), r * std::sin(0.3),
                                           rho * std::cos(1.1), rho * std::sin(1.1));
      CHECK(std::abs(p - std::polar(1.0, psi) * c) < 1e-14);
    }
  }
}

TEST_CASE("Fourier transform of a Gaussian") {
  const auto f = builtin_signal(signal::Gaussian{1.0}, kGrid, kAngles);
  const auto F = olct2d_polar(f, special_case(preset::Ft{}), kGrid, kAngles);
  CHECK(max_abs_error(F, [](double rho, double) { return Complex(std::exp(-rho * rho / 2)); }) <
        1e-10);
  const auto G = ft2d_polar(f, kGrid, kAngles);
  CHECK(relative_l2(G, F) < 1e-14);
}

TEST_CASE("offset-free transforms of a Gaussian match the closed form") {
  const auto f = builtin_signal(signal::Gaussian{1.0}, kGrid, kAngles);
  for (const OlctParams& A : {special_case(preset::Frft{std::numbers::pi / 3}),
                              OlctParams{1, 1, 0, 1, 0, 0}, special_case(preset::Fresnel{2}),
                              OlctParams{1, 2, -0.25, 0.5, 0, 0}}) {
    CAPTURE(to_string(A));
    const auto out_r = default_output_grid(A, kGrid);
    const auto exact = [&](double rho, double) { return oracle::gaussian_lct(A.a, A.b, A.d, rho); };
    CHECK(max_abs_error(olct2d_polar(f, A, out_r, kAngles), exact) < 1e-6);
    CHECK(max_abs_error(olct_via_harmonics(f, A, 16, out_r, kAngles), exact) < 1e-10);
  }
}

TEST_CASE("vortex output stays on its order") {
  const auto f = builtin_signal(signal::Vortex{1.0, 3}, kGrid, kAngles);
  const OlctParams A{1, 1, 0, 1, 0, 0};
  const auto F = olct2d_polar(f, A, default_output_grid(A, kGrid), kAngles);
  const auto s = decompose(F, 16);
  double others = 0.0;
  for (int n = -16; n <= 16; ++n) {
    if (n != 3) others = std::max(others, l2_norm(s.profile(n), s.rgrid()));
  }
  CHECK(others < 1e-10 * l2_norm(s.profile(3), s.rgrid()));
}

TEST_CASE("zero and linearity") {
  const OlctParams A{1, 1, 0, 1, 0.5, 0.5};
  const auto z = builtin_signal(signal::Zero{}, kGrid, kAngles);
  const auto Z = olct2d_polar(z, A);
  for (const auto& v : Z.samples()) CHECK(v == Complex(0.0, 0.0));

  const auto rg = RadialGrid::gauss_legendre(32, 8.0);
  const AngularGrid ag(16);
  const auto f = builtin_signal(signal::Gaussian{1.0}, rg, ag);
  const auto g = builtin_signal(signal::Vortex{1.0, 1}, rg, ag);
  const Complex alpha(0.3, -1.2);
  const auto lhs = olct2d_polar(alpha * f + g, A);
  const auto rhs = alpha * olct2d_polar(f, A) + olct2d_polar(g, A);
  CHECK(relative_l2(lhs, rhs) < 1e-13);
}

TEST_CASE("direct path is independent of the thread count") {
  const auto rg = RadialGrid::gauss_legendre(24, 6.0);
  const AngularGrid ag(12);
  const auto f = builtin_signal(signal::Ring{2.0, 0.5, 3}, rg, ag);
  const OlctParams A{1, 1, 0, 1, 0.5, 0.5};
  set_thread_count(1);
  const auto one = olct2d_polar(f, A);
  set_thread_count(4);
  const auto four = olct2d_polar(f, A);
  set_thread_count(0);
  for (std::size_t k = 0; k < one.samples().size(); ++k) {
    CHECK(one.samples()[k] == four.samples()[k]);
  }
}

TEST_CASE("Hankel transform against a fine reference") {
  for (int n : {0, 1, 2, 5}) {
    const auto p = smooth_profile(n, kGrid);
    const auto out = RadialGrid::gauss_legendre(24, 6.0);
    const auto H = hankel(p, n, out);
    for (int k = 0; k < out.size(); ++k) {
      const auto ref = oracle::hankel(
          [&](double r) { return Complex(std::pow(r, n) * std::exp(-r * r / 2)); }, n,
          out.node(k), 8.0);
      CHECK(std::abs(H.samples[k] - ref) < 1e-12);
      // H_n[r^n e^{-r^2/2}] = rho^n e^{-rho^2/2}
      const double rho = out.node(k);
      // Differs by the tail beyond r = 8, about 8^n e^{-32}.
      CHECK(std::abs(H.samples[k] - std::pow(rho, n) * std::exp(-rho * rho / 2)) < 1e-9);
    }
  }
}

TEST_CASE("OLCHT at Fourier parameters is i^{-n} times the Hankel transform") {
  const OlctParams ft = special_case(preset::Ft{});
  for (int n : {0, 1, 2, 3, -2}) {
    const auto p = smooth_profile(n, kGrid);
    const auto a = olcht(p, n, ft, kGrid);
    const auto h = hankel(p, n, kGrid);
    const Complex phase = std::pow(Complex(0, 1), -n);
    for (int k = 0; k < kGrid.size(); ++k) CHECK(std::abs(a.samples[k] - phase * h.samples[k]) < 1e-14);
  }
}

TEST_CASE("OLCHT round trip and chirp relation") {
  for (const OlctParams& A : {OlctParams{1, 1, 0, 1, 0, 0}, OlctParams{1, 2, -0.25, 0.5, 0, 0},
                              special_case(preset::Ofrft{std::numbers::pi / 3, 0.5, 0.3})}) {
    const auto out = default_output_grid(A, kGrid);
    for (int n : {0, 1, 2}) {
      const auto p = smooth_profile(n, kGrid);
      const auto F = olcht(p, n, A, out);
      CHECK(relative_l2(olcht_inverse(F, n, A, kGrid).samples, p.samples, kGrid) < 1e-10);
      CHECK(relative_l2(olcht_from_ht(p, n, A, out).samples, F.samples, out) < 1e-12);
    }
  }
}

TEST_CASE("truncated w sums track the closed form") {
  const OlctParams A{1, 1, 0, 1, 0.5, 0.5};
  const auto p = smooth_profile(1, kGrid);
  const auto out = default_output_grid(A, kGrid);
  const auto closed = olcht(p, 1, A, out);
  const auto summed = olcht(p, 1, A, out, WFactorMode::truncated_sum(64));
  CHECK(relative_l2(summed.samples, closed.samples, out) < 1e-9);
}

TEST_CASE("b = 2 radial scaling via the Fourier transform") {
  const OlctParams A{1, 2, -0.25, 0.5, 0, 0};
  const auto f = builtin_signal(signal::AngularCos{1.0, 2}, kGrid, kAngles);
  const auto out = default_output_grid(A, kGrid);
  CHECK(relative_l2(olct_from_ft(f, A, out, kAngles), olct2d_polar(f, A, out, kAngles)) < 1e-12);
}

TEST_CASE("Cartesian quadrature matches the closed form") {
  const CartesianGrid grid{64, 8.0};
  const auto cf = sample_cartesian(signal::Gaussian{1.0}, grid);
  const OlctParams A{1, 1, 0, 1, 0, 0};
  const Point2 pts[] = {{0.0, 0.0}, {1.0, -0.5}, {2.0, 2.0}};
  const auto v = olct2d_cartesian(cf, A, pts);
  for (int k = 0; k < 3; ++k) {
    const double rho = std::hypot(pts[k].u1, pts[k].u2);
    CHECK(std::abs(v[k] - oracle::gaussian_lct(A.a, A.b, A.d, rho)) < 1e-10);
  }
}

TEST_CASE("errors") {
  const auto f = builtin_signal(signal::Gaussian{1.0}, kGrid, kAngles);
  CHECK_THROWS_AS(olct2d_polar(f, OlctParams{1, -1, 0, 1, 0, 0}), Error);
  try {
    olct2d_polar(f, OlctParams{0, 1, -1, 0, 0.5, 0});
    FAIL("expected singular parameters");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::singular_params);
  }
  CHECK_THROWS_AS(olct_spectrum(f, OlctParams{1, 1, 0, 1, 0, 0}, 40, kGrid), Error);
  CHECK_THROWS_AS(hankel(smooth_profile(0, kGrid), kMaxBesselOrder + 1, kGrid), Error);
}
