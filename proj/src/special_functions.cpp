#include "olct/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "olct/error.hpp"

namespace olct {
namespace {

constexpr double kRescaleAbove = 1e250;
constexpr double kRescaleBy = 1e-250;

void check_argument(double x) {
  if (!std::isfinite(x)) {
    std::ostringstream msg;
    msg << "bessel_j: argument must be finite, got " << x;
    throw Error(ErrorCode::domain, msg.str());
  }
}

void check_order(int n) {
  if (n > kMaxBesselOrder || n < -kMaxBesselOrder) {
    std::ostringstream msg;
    msg << "bessel_j: |n| = " << std::abs(n) << " exceeds order cap "
        << kMaxBesselOrder;
    throw Error(ErrorCode::order_cap, msg.str());
  }
}

// Even starting index for the downward recurrence. The tail J_M(x) is
// negligible once M clears max(n, x) by several transition widths.
int miller_start(int n, double x) {
  const double base = std::max(static_cast<double>(n), x);
  const int m = static_cast<int>(base + 13.0 * std::sqrt(base) + 24.0);
  return 2 * (m / 2 + 1);
}

// Ascending series; only called where the first term dominates.
double series(int n, double x) {
  const double half = 0.5 * x;
  double term = 1.0;
  for (int j = 1; j <= n; ++j) term *= half / j;
  if (term == 0.0) return 0.0;
  const double q = -half * half;
  double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * (n + k));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// Downward recurrence from an even start, normalized by J0 + 2 sum J_2k = 1.
// Writes J_0..J_{out.size()-1}; x > 0.
void miller(double x, std::span<double> out) {
  const int top = static_cast<int>(out.size()) - 1;
  const int start = miller_start(top, x);
  std::fill(out.begin(), out.end(), 0.0);
  double above = 0.0;  // J_{j+1}
  double here = 1.0;   // J_j, unnormalized
  double norm = 0.0;
  const double two_over_x = 2.0 / x;
  for (int j = start; j >= 1; --j) {
    const double below = j * two_over_x * here - above;
    above = here;
    here = below;  // J_{j-1}
    const int k = j - 1;
    if (k <= top) out[static_cast<std::size_t>(k)] = here;
    if (k > 0 && k % 2 == 0) norm += 2.0 * here;
    if (std::abs(here) > kRescaleAbove) {
      here *= kRescaleBy;
      above *= kRescaleBy;
      norm *= kRescaleBy;
      for (int m = k; m <= top; ++m) out[static_cast<std::size_t>(m)] *= kRescaleBy;
    }
  }
  norm += here;
  const double inv = 1.0 / norm;
  for (double& v : out) v *= inv;
}

}  // namespace

double bessel_j(int n, double x) {
  check_argument(x);
  check_order(n);
  double sign = 1.0;
  if (n < 0) {
    n = -n;
    if (n % 2 != 0) sign = -sign;
  }
  if (x < 0.0) {
    x = -x;
    if (n % 2 != 0) sign = -sign;
  }
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  if (0.25 * x * x <= n + 1.0) return sign * series(n, x);

  std::vector<double> orders(static_cast<std::size_t>(n) + 1);
  miller(x, orders);
  return sign * orders.back();
}

void bessel_j_orders(double x, std::span<double> out) {
  check_argument(x);
  if (out.empty()) return;
  check_order(static_cast<int>(out.size()) - 1);
  const bool negative = x < 0.0;
  const double ax = std::abs(x);
  if (ax == 0.0) {
    std::fill(out.begin(), out.end(), 0.0);
    out[0] = 1.0;
    return;
  }
  miller(ax, out);
  if (negative) {
    for (std::size_t m = 1; m < out.size(); m += 2) out[m] = -out[m];
  }
}

std::complex<double> plane_wave_expansion(double x, double theta, int n_max) {
  if (n_max < 0) {
    throw Error(ErrorCode::precondition,
                "plane_wave_expansion: n_max must be non-negative");
  }
  std::vector<double> j(static_cast<std::size_t>(n_max) + 1);
  bessel_j_orders(x, j);
  std::complex<double> sum = j[0];
  for (int m = 1; m <= n_max; ++m) {
    const double jm = j[static_cast<std::size_t>(m)];
    const double parity = (m % 2 == 0) ? 1.0 : -1.0;
    sum += jm * (std::polar(1.0, -m * theta) + parity * std::polar(1.0, m * theta));
  }
  return sum;
}

}  // namespace olct
