#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "olct/error.hpp"
#include "olct/fields.hpp"
#include "oracles.hpp"

using namespace olct;

TEST_CASE("Gauss-Legendre grid") {
  const auto g = RadialGrid::gauss_legendre(5, 2.0);
  // Nodes of P_5 mapped from [-1, 1] to [0, 2].
  const double ref[] = {-0.9061798459386639928, -0.53846931010568309104, 0.0,
                        0.53846931010568309104, 0.9061798459386639928};
  for (int i = 0; i < 5; ++i) CHECK(g.node(i) == doctest::Approx(ref[i] + 1.0).epsilon(1e-15));
  double w = 0.0;
  for (double x : g.weights()) w += x;
  CHECK(w == doctest::Approx(2.0).epsilon(1e-15));

  // Exact for polynomials up to degree 2n - 1.
  const auto h = RadialGrid::gauss_legendre(40, 3.0);
  double s = 0.0;
  for (int i = 0; i < h.size(); ++i) s += h.weight(i) * std::pow(h.node(i), 79);
  CHECK(s / (std::pow(3.0, 80) / 80.0) == doctest::Approx(1.0).epsilon(1e-13));

  const auto ref_rule = oracle::legendre(128, 0.0, 8.0);
  const auto mine = RadialGrid::gauss_legendre(128, 8.0);
  for (int i = 0; i < 128; ++i) {
    CHECK(std::abs(mine.node(i) - ref_rule.x[i]) < 1e-13);
    CHECK(std::abs(mine.weight(i) - ref_rule.w[i]) < 1e-13);
  }
  CHECK(mine.scaled(0.5).matches(RadialGrid::gauss_legendre(128, 4.0)));
  CHECK_THROWS_AS(RadialGrid::gauss_legendre(0, 1.0), Error);
  CHECK_THROWS_AS(RadialGrid::gauss_legendre(4, -1.0), Error);
}

TEST_CASE("angular grid") {
  const AngularGrid a(8);
  CHECK(a.node(2) == doctest::Approx(std::numbers::pi / 2));
  CHECK(a.weight() == doctest::Approx(std::numbers::pi / 4));
  CHECK_THROWS_AS(AngularGrid(7), Error);
  CHECK_THROWS_AS(AngularGrid(0), Error);
  CHECK(required_angular_nodes(16) == 34);
}

TEST_CASE("decompose and synthesize") {
  const auto rg = RadialGrid::gauss_legendre(16, 4.0);
  const AngularGrid ag(16);
  const auto f = builtin_signal(signal::AngularCos{1.0, 2}, rg, ag);
  const auto s = decompose(f, 4);
  CHECK(s.support(1e-14) == std::vector<int>{-2, 0, 2});
  for (int i = 0; i < rg.size(); ++i) {
    const double g = std::exp(-rg.node(i) * rg.node(i) / 2);
    CHECK(std::abs(s.profile(0)[i] - g) < 1e-15);
    CHECK(std::abs(s.profile(2)[i] - 0.5 * g) < 1e-15);
  }
  const auto back = synthesize(s, ag);
  CHECK(relative_l2(back, f) < 1e-14);

  const auto v = decompose(builtin_signal(signal::Vortex{1.0, 3}, rg, ag), 4);
  CHECK(v.support(1e-14) == std::vector<int>{3});

  try {
    decompose(f, 8);
    FAIL("expected aliasing");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::aliasing);
  }
}

TEST_CASE("norms") {
  const auto rg = RadialGrid::gauss_legendre(64, 10.0);
  const AngularGrid ag(16);
  const auto f = builtin_signal(signal::Gaussian{1.0}, rg, ag);
  // ||e^{-r^2/2}||^2 = pi
  CHECK(l2_norm(f) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-13));
  const auto z = builtin_signal(signal::Zero{}, rg, ag);
  CHECK(relative_l2(z, z) == 0.0);
  CHECK(relative_l2(f, z) == doctest::Approx(l2_norm(f)));
  CHECK(relative_l2((2.0 * f) + f, 3.0 * f) < 1e-15);
  const auto other = builtin_signal(signal::Gaussian{1.0}, RadialGrid::gauss_legendre(32, 10.0), ag);
  CHECK_THROWS_AS(relative_l2(f, other), Error);
}

TEST_CASE("signals") {
  CHECK(evaluate(signal::Ring{2.0, 0.5, 3}, 2.0, 0.0) == Complex(1.0, 0.0));
  CHECK(std::abs(evaluate(signal::Vortex{1.0, 1}, 1.0, std::numbers::pi / 2) -
                 Complex(0.0, std::exp(-0.5))) < 1e-16);
  CHECK(band_limit(signal::AngularCos{1.0, 2}) == 2);
  CHECK(radially_symmetric(signal::Gaussian{2.0}));
  CHECK(!radially_symmetric(signal::Vortex{1.0, 2}));
  CHECK(std::holds_alternative<signal::Ring>(parse_signal("ring:2,0.5,3")));
  CHECK(to_string(parse_signal("vortex:1,2")) == "vortex:1,2");
  CHECK_THROWS_AS(parse_signal("vortex:1"), Error);
  CHECK_THROWS_AS(parse_signal("square:1"), Error);
}

TEST_CASE("CSV round trip is exact") {
  const auto rg = RadialGrid::gauss_legendre(12, 3.0);
  const AngularGrid ag(6);
  const auto f = builtin_signal(signal::Ring{1.0, 0.3, 1}, rg, ag);
  std::stringstream ss;
  write_field_csv(ss, f);
  const auto text = ss.str();
  CHECK(text.rfind("r,theta,re,im\n", 0) == 0);
  const auto g = read_field_csv(ss);
  CHECK(g.rgrid().matches(rg));
  for (int i = 0; i < rg.size(); ++i) {
    for (int j = 0; j < ag.size(); ++j) CHECK(g.at(i, j) == f.at(i, j));
  }
  std::stringstream again;
  write_field_csv(again, g);
  CHECK(again.str() == text);

  std::stringstream bad("r,theta,re,im\n0.1,0,1\n");
  CHECK_THROWS_AS(read_field_csv(bad), Error);
}

TEST_CASE("non-finite samples are rejected") {
  const auto rg = RadialGrid::gauss_legendre(2, 1.0);
  const AngularGrid ag(2);
  std::vector<Complex> v(4, Complex(NAN, 0.0));
  CHECK_THROWS_AS(PolarField(rg, ag, v), Error);
}
