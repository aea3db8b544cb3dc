#include "olct/params.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <vector>

#include "olct/error.hpp"
#include "olct/special_functions.hpp"

namespace olct {
namespace {

constexpr std::complex<double> kI{0.0, 1.0};

// numerator / denominator, where an exactly-zero numerator contributes nothing
// even over a zero denominator.
double phase_term(double numerator, double denominator, const char* what) {
  if (numerator == 0.0) return 0.0;
  if (denominator == 0.0) {
    std::ostringstream msg;
    msg << what << ": nonzero numerator " << numerator
        << " over zero denominator (a = 0 with tau != 0, or d = 0 with "
           "d*tau != b*eta); the polar kernel is undefined for these parameters";
    throw Error(ErrorCode::singular_params, msg.str());
  }
  return numerator / denominator;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double parse_plain(std::string_view s, std::string_view whole) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw Error(ErrorCode::parse,
                "cannot parse real number '" + std::string(whole) + "'");
  }
  return value;
}

std::vector<double> parse_list(std::string_view body, std::size_t expected,
                               std::string_view what) {
  const auto parts = split(body, ',');
  if (parts.size() != expected) {
    std::ostringstream msg;
    msg << what << ": expected " << expected << " comma-separated values, got "
        << parts.size() << " in '" << body << "'";
    throw Error(ErrorCode::parse, msg.str());
  }
  std::vector<double> values;
  values.reserve(parts.size());
  for (auto part : parts) values.push_back(parse_real(part));
  return values;
}

}  // namespace

void validate(const OlctParams& p) {
  for (double v : {p.a, p.b, p.c, p.d, p.tau, p.eta}) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::invalid_params,
                  "parameters must be finite: " + to_string(p));
    }
  }
  if (std::abs(p.a * p.d - p.b * p.c - 1.0) > kSymplecticTolerance) {
    throw Error(ErrorCode::invalid_params,
                "parameters violate ad - bc = 1: " + to_string(p));
  }
  if (p.b == 0.0) {
    throw Error(ErrorCode::unsupported_branch,
                "b = 0 is not supported (only the integral branch b != 0 is "
                "implemented): " + to_string(p));
  }
}

void require_forward(const OlctParams& p) {
  validate(p);
  if (!(p.b > 0.0)) {
    throw Error(ErrorCode::precondition,
                "forward transforms require b > 0: " + to_string(p));
  }
}

OlctParams make_params(double a, double b, double c, double d, double tau,
                       double eta) {
  OlctParams p{a, b, c, d, tau, eta};
  validate(p);
  return p;
}

OlctParams inverse_params(const OlctParams& p) {
  return {p.d, -p.b, -p.c, p.a, p.b * p.eta - p.d * p.tau,
          p.c * p.tau - p.a * p.eta};
}

OlctParams negate_params(const OlctParams& p) {
  return {-p.a, -p.b, -p.c, -p.d, -p.tau, -p.eta};
}

double kernel_scale(double b) {
  return 1.0 / (2.0 * std::numbers::pi * std::abs(b));
}

std::complex<double> ell_factor(const OlctParams& p) {
  const double shifted = p.d * p.tau - p.b * p.eta;
  const double phase =
      phase_term((p.a * p.d + 1.0) * p.tau * p.tau, 2.0 * p.a * p.b, "ell_A") +
      phase_term(shifted * shifted, 2.0 * p.b * p.d, "ell_A");
  return std::polar(1.0, phase);
}

std::complex<double> inversion_constant(const OlctParams& p) {
  const double phase = 0.5 * (p.c * p.d * p.tau * p.tau -
                              2.0 * p.a * p.d * p.tau * p.eta +
                              p.a * p.b * p.eta * p.eta);
  return std::polar(1.0, phase);
}

PrefactorSet prefactors(const OlctParams& p) {
  PrefactorSet out;
  out.k_A = kernel_scale(p.b) * std::exp(kI * (p.d / (2.0 * p.b)) * p.tau * p.tau);
  out.ell_A = ell_factor(p);
  out.c_inv = inversion_constant(p);
  return out;
}

double w_sum(double x, WFactorMode mode) {
  if (mode.kind == WFactorMode::Kind::closed_form) return 1.0;
  if (mode.n_max < 0) {
    throw Error(ErrorCode::precondition, "w_sum: n_max must be non-negative");
  }
  std::vector<double> j(static_cast<std::size_t>(mode.n_max) + 1);
  bessel_j_orders(x, j);
  // J_{-m} = (-1)^m J_m: odd orders cancel pairwise.
  double sum = j[0];
  for (int m = 2; m <= mode.n_max; m += 2) sum += 2.0 * j[static_cast<std::size_t>(m)];
  return sum;
}

std::complex<double> w3_factor(const OlctParams& p) {
  const double shifted = p.b * p.eta - p.d * p.tau;
  const double skew = p.b * p.c - p.a * p.d;
  const double phase =
      phase_term(shifted * shifted, 2.0 * p.b * p.d, "w3") +
      phase_term(p.tau * p.tau * skew * skew, 2.0 * p.a * p.b, "w3");
  return std::polar(1.0, -phase);
}

WFactors w_factors(const OlctParams& p, double r, double rho, WFactorMode mode) {
  const double root2 = std::numbers::sqrt2;
  WFactors out;
  out.w1 = w_sum(root2 * rho * (p.d * p.tau - p.b * p.eta) / p.b, mode);
  out.w2 = w_sum(root2 * p.tau * r / p.b, mode);
  out.w3 = w3_factor(p);
  return out;
}

OlctParams special_case(const SpecialCase& kind) {
  struct Visitor {
    OlctParams operator()(const preset::Olct& k) const {
      validate(k.params);
      return k.params;
    }
    OlctParams operator()(const preset::Lct& k) const {
      return make_params(k.a, k.b, k.c, k.d);
    }
    OlctParams operator()(const preset::Frft& k) const {
      return rotation(k.theta, 0.0, 0.0);
    }
    OlctParams operator()(const preset::Ft&) const {
      return {0.0, 1.0, -1.0, 0.0, 0.0, 0.0};
    }
    OlctParams operator()(const preset::Ofrft& k) const {
      return rotation(k.theta, k.tau, k.eta);
    }
    OlctParams operator()(const preset::Fresnel& k) const {
      return make_params(1.0, k.b, 0.0, 1.0);
    }
    OlctParams operator()(const preset::FreqMod&) const {
      return unsupported("frequency modulation");
    }
    OlctParams operator()(const preset::TimeScale&) const {
      return unsupported("time scaling");
    }
    OlctParams operator()(const preset::TimeShift&) const {
      return unsupported("time shifting");
    }

    static OlctParams rotation(double theta, double tau, double eta) {
      const double s = std::sin(theta);
      if (std::abs(s) < 1e-12) {
        throw Error(ErrorCode::unsupported_branch,
                    "fractional transform with sin(theta) = 0 has b = 0");
      }
      const double c = std::cos(theta);
      return make_params(c, s, -s, c, tau, eta);
    }
    static OlctParams unsupported(const char* name) {
      throw Error(ErrorCode::unsupported_branch,
                  std::string(name) + " has b = 0, which is not supported");
    }
  };
  return std::visit(Visitor{}, kind);
}

double parse_real(std::string_view text) {
  std::string_view s = trim(text);
  const std::size_t pi_pos = s.find("pi");
  if (pi_pos == std::string_view::npos) return parse_plain(s, text);

  double value = std::numbers::pi;
  std::string_view head = trim(s.substr(0, pi_pos));
  std::string_view tail = trim(s.substr(pi_pos + 2));
  if (!head.empty()) {
    if (head == "-") {
      value = -value;
    } else {
      if (head.back() != '*') {
        throw Error(ErrorCode::parse, "cannot parse angle '" + std::string(text) + "'");
      }
      head.remove_suffix(1);
      value *= parse_plain(head, text);
    }
  }
  if (!tail.empty()) {
    if (tail.front() != '/') {
      throw Error(ErrorCode::parse, "cannot parse angle '" + std::string(text) + "'");
    }
    tail.remove_prefix(1);
    value /= parse_plain(tail, text);
  }
  return value;
}

SpecialCase parse_preset(std::string_view text) {
  text = trim(text);
  const std::size_t colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  const std::string_view body =
      colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);

  if (name == "ft") {
    if (!body.empty()) throw Error(ErrorCode::parse, "preset 'ft' takes no arguments");
    return preset::Ft{};
  }
  if (name == "frft") {
    const auto v = parse_list(body, 1, "frft");
    return preset::Frft{v[0]};
  }
  if (name == "lct") {
    const auto v = parse_list(body, 4, "lct");
    return preset::Lct{v[0], v[1], v[2], v[3]};
  }
  if (name == "fresnel") {
    const auto v = parse_list(body, 1, "fresnel");
    return preset::Fresnel{v[0]};
  }
  if (name == "ofrft") {
    const auto v = parse_list(body, 3, "ofrft");
    return preset::Ofrft{v[0], v[1], v[2]};
  }
  throw Error(ErrorCode::parse, "unknown preset '" + std::string(text) +
                                    "' (expected ft, frft:t, lct:a,b,c,d, "
                                    "fresnel:b, ofrft:t,tau,eta)");
}

OlctParams parse_params(std::string_view text) {
  const auto v = parse_list(text, 6, "params");
  return make_params(v[0], v[1], v[2], v[3], v[4], v[5]);
}

std::string to_string(const OlctParams& p) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "(%.17g, %.17g, %.17g, %.17g, %.17g, %.17g)",
                p.a, p.b, p.c, p.d, p.tau, p.eta);
  return buf;
}

}  // namespace olct
