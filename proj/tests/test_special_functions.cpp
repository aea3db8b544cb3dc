#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "olct/error.hpp"
#include "olct/special_functions.hpp"
#include "oracles.hpp"

using olct::bessel_j;

TEST_CASE("bessel_j matches frozen high-precision values") {
  struct Row {
    int n;
    double x;
    double expected;
  };
  // 30-digit reference values.
  const Row rows[] = {
      {0, 1.0, 0.76519768655796655145},   {1, 2.5, 0.49709410246427403801},
      {5, 10.0, -0.23406152818679364044}, {20, 50.0, -0.11670435275957973734},
      {64, 100.0, 0.039985069452918338196}, {0, 30.0, -0.086367983581040211336},
      {100, 80.0, 4.6065530648234773541e-6}, {2, -3.0, 0.48609126058589107691},
  };
  for (const auto& r : rows) {
    CAPTURE(r.n);
    CAPTURE(r.x);
    CHECK(std::abs(bessel_j(r.n, r.x) - r.expected) < 1e-13);
  }
  CHECK(std::abs(bessel_j(3, 0.001) / 2.0833332031250033853e-11 - 1.0) < 1e-12);
}

TEST_CASE("bessel_j edge cases") {
  CHECK(bessel_j(0, 0.0) == 1.0);
  CHECK(bessel_j(4, 0.0) == 0.0);
  CHECK(bessel_j(-1, 0.0) == 0.0);
  // J_{-n} = (-1)^n J_n
  CHECK(bessel_j(-3, 2.0) == doctest::Approx(-bessel_j(3, 2.0)).epsilon(1e-15));
  CHECK(bessel_j(-4, 2.0) == doctest::Approx(bessel_j(4, 2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(bessel_j(0, std::nan("")), olct::Error);
  CHECK_THROWS_AS(bessel_j(0, INFINITY), olct::Error);
  try {
    bessel_j(olct::kMaxBesselOrder + 1, 1.0);
    FAIL("expected order cap");
  } catch (const olct::Error& e) {
    CHECK(e.code() == olct::ErrorCode::order_cap);
  }
}

TEST_CASE("bessel_j agrees with the integral representation") {
  double worst = 0.0;
  for (int n = 0; n <= 20; ++n) {
    for (double x = 0.0; x <= 50.0; x += 0.5) {
      worst = std::max(worst, std::abs(bessel_j(n, x) - oracle::bessel_quadrature(n, x)));
    }
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("bessel_j_orders agrees with single-order evaluation") {
  for (double x : {0.0, 0.3, 7.0, -7.0, 45.0, 240.0}) {
    std::vector<double> row(41);
    olct::bessel_j_orders(x, row);
    for (int n = 0; n <= 40; ++n) {
      CAPTURE(x);
      CAPTURE(n);
      CHECK(std::abs(row[n] - bessel_j(n, x)) < 1e-13);
    }
  }
}

TEST_CASE("recurrence identity J_{n-1} + J_{n+1} = (2n/x) J_n") {
  for (double x : {0.7, 5.0, 33.0}) {
    for (int n = 1; n < 30; ++n) {
      const double lhs = bessel_j(n - 1, x) + bessel_j(n + 1, x);
      CHECK(std::abs(lhs - 2.0 * n / x * bessel_j(n, x)) < 1e-12);
    }
  }
}

TEST_CASE("plane wave expansion converges to e^{-i x sin theta}") {
  double worst = 0.0;
  double excess = 0.0;
  for (double x = 0.0; x <= 20.0; x += 0.25) {
    // Dropped orders: sum_{|m| > 40} |J_m(x)|, 6.9e-10 at x = 20.
    double tail = 0.0;
    for (int m = 41; m < 120; ++m) tail += 2.0 * std::abs(oracle::bessel_quadrature(m, x));
    double err = 0.0;
    for (double theta = 0.0; theta < 2.0 * oracle::pi; theta += 0.1) {
      const auto exact = std::polar(1.0, -x * std::sin(theta));
      err = std::max(err, std::abs(olct::plane_wave_expansion(x, theta, 40) - exact));
    }
    if (x <= 18.0) worst = std::max(worst, err);
    excess = std::max(excess, err - tail);
  }
  CHECK(worst <= 1e-10);
  CHECK(excess <= 1e-14);
  CHECK(olct::plane_wave_expansion(0.0, 1.0, 0) == std::complex<double>(1.0, 0.0));
  CHECK_THROWS_AS(olct::plane_wave_expansion(1.0, 0.0, -1), olct::Error);
}
