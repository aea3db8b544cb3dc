#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "olct/error.hpp"
#include "olct/params.hpp"

using namespace olct;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::ok;
}

}  // namespace

TEST_CASE("validation") {
  CHECK_NOTHROW(validate({1, 1, 0, 1, 0.5, 0.5}));
  CHECK(code_of([] { validate({1, 1, 1, 1, 0, 0}); }) == ErrorCode::invalid_params);
  CHECK(code_of([] { validate({1, 0, 0, 1, 0, 0}); }) == ErrorCode::unsupported_branch);
  CHECK(code_of([] { validate({NAN, 1, 0, 1, 0, 0}); }) == ErrorCode::invalid_params);
  CHECK_NOTHROW(validate({1, -1, 0, 1, 0, 0}));
  CHECK(code_of([] { require_forward({1, -1, 0, 1, 0, 0}); }) != ErrorCode::ok);
}

TEST_CASE("inverse parameters") {
  const OlctParams A{2, 3, 1.5, 2.75, 0.4, -0.2};
  validate(A);
  const OlctParams inv = inverse_params(A);
  CHECK(inv == OlctParams{2.75, -3, -1.5, 2, 3 * -0.2 - 2.75 * 0.4, 1.5 * 0.4 - 2 * -0.2});
  CHECK(inverse_params(inv).a == A.a);
  CHECK(inverse_params(inv).b == A.b);
  CHECK(inverse_params(inv).tau == doctest::Approx(A.tau));
  CHECK(inverse_params(inv).eta == doctest::Approx(A.eta));
  const OlctParams neg = negate_params(A);
  CHECK(neg.a == -2);
  CHECK(neg.eta == 0.2);
  CHECK_NOTHROW(validate(neg));
}

TEST_CASE("prefactors") {
  // Offset-free tuples carry no phase.
  const auto p = prefactors({0.5, 2, -0.375, 0.5, 0, 0});
  CHECK(std::abs(p.ell_A - 1.0) < 1e-15);
  CHECK(std::abs(p.c_inv - 1.0) < 1e-15);
  CHECK(std::abs(p.k_A - 1.0 / (4.0 * std::numbers::pi)) < 1e-15);

  // Hand-evaluated phases for A = (1, 1, 0, 1, 0.3, 0.7).
  const OlctParams A{1, 1, 0, 1, 0.3, 0.7};
  const auto q = prefactors(A);
  CHECK(std::arg(q.ell_A) == doctest::Approx(2 * 0.09 / 2 + 0.16 / 2).epsilon(1e-14));
  CHECK(std::arg(q.c_inv) == doctest::Approx(0.5 * (-2 * 0.3 * 0.7 + 0.49)).epsilon(1e-14));
  CHECK(std::arg(q.k_A) == doctest::Approx(0.09 / 2).epsilon(1e-14));
  CHECK(std::abs(q.k_A) == doctest::Approx(1.0 / (2.0 * std::numbers::pi)));
  CHECK(std::arg(w3_factor(A)) == doctest::Approx(-(0.16 / 2 + 0.09 / 2)).epsilon(1e-14));
}

TEST_CASE("singular prefactors") {
  // a = 0 with tau != 0
  CHECK(code_of([] { prefactors({0, 1, -1, 0, 0.5, 0}); }) == ErrorCode::singular_params);
  // d = 0 with d tau - b eta != 0
  CHECK(code_of([] { prefactors({0, 1, -1, 0, 0, 0.5}); }) == ErrorCode::singular_params);
  // zero numerators are fine
  CHECK_NOTHROW(prefactors({0, 1, -1, 0, 0, 0}));
}

TEST_CASE("w sums") {
  CHECK(w_sum(12.5, WFactorMode::closed_form()) == 1.0);
  for (double x = 0.0; x <= 30.0; x += 0.5) {
    CHECK(std::abs(w_sum(x, WFactorMode::truncated_sum(64)) - 1.0) <= 1e-9);
  }
  CHECK(std::abs(w_sum(30.0, WFactorMode::truncated_sum(5)) - 1.0) > 1e-3);
}

TEST_CASE("special cases") {
  CHECK(special_case(preset::Ft{}) == OlctParams{0, 1, -1, 0, 0, 0});
  const auto fr = special_case(preset::Frft{std::numbers::pi / 3});
  CHECK(fr.a == doctest::Approx(0.5));
  CHECK(fr.b == doctest::Approx(std::sqrt(3.0) / 2));
  CHECK(special_case(preset::Fresnel{2}) == OlctParams{1, 2, 0, 1, 0, 0});
  CHECK(code_of([] { special_case(preset::TimeShift{1.0}); }) == ErrorCode::unsupported_branch);
  CHECK(code_of([] { special_case(preset::FreqMod{1.0}); }) == ErrorCode::unsupported_branch);
  CHECK(code_of([] { special_case(preset::TimeScale{2.0}); }) == ErrorCode::unsupported_branch);
  CHECK(code_of([] { special_case(preset::Frft{0.0}); }) == ErrorCode::unsupported_branch);
}

TEST_CASE("parsing") {
  CHECK(parse_real("pi/3") == doctest::Approx(std::numbers::pi / 3));
  CHECK(parse_real("2*pi/3") == doctest::Approx(2 * std::numbers::pi / 3));
  CHECK(parse_real("-pi") == doctest::Approx(-std::numbers::pi));
  CHECK(parse_real("0.25") == 0.25);
  CHECK(code_of([] { parse_real("abc"); }) == ErrorCode::parse);
  CHECK(parse_params("1,1,0,1,0.5,0.5") == OlctParams{1, 1, 0, 1, 0.5, 0.5});
  CHECK(code_of([] { parse_params("1,1,0"); }) == ErrorCode::parse);
  CHECK(code_of([] { parse_params("1,1,1,1,0,0"); }) == ErrorCode::invalid_params);
  CHECK(special_case(parse_preset("ft")) == OlctParams{0, 1, -1, 0, 0, 0});
  CHECK(special_case(parse_preset("lct:1,1,0,1")) == OlctParams{1, 1, 0, 1, 0, 0});
  const auto of = special_case(parse_preset("ofrft:pi/3,0.5,0.3"));
  CHECK(of.tau == 0.5);
  CHECK(of.eta == 0.3);
  CHECK(code_of([] { parse_preset("nonsense"); }) == ErrorCode::parse);
  const std::string text = to_string(of);
  CHECK(parse_params(text.substr(1, text.size() - 2)) == of);
}
