#include "olct/fields.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "olct/error.hpp"
#include "olct/params.hpp"

namespace olct {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Legendre nodes/weights on [-1, 1], ascending.
void legendre_rule(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(static_cast<std::size_t>(n), 0.0);
  w.assign(static_cast<std::size_t>(n), 0.0);
  const int half = (n + 1) / 2;
  for (int i = 1; i <= half; ++i) {
    double z = std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = z;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0;
    double p1 = z;
    for (int j = 2; j <= n; ++j) {
      const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (z * p1 - p0) / (z * z - 1.0);
    const double weight = 2.0 / ((1.0 - z * z) * dp * dp);
    x[static_cast<std::size_t>(i - 1)] = -z;
    x[static_cast<std::size_t>(n - i)] = z;
    w[static_cast<std::size_t>(i - 1)] = weight;
    w[static_cast<std::size_t>(n - i)] = weight;
  }
  if (n % 2 == 1) x[static_cast<std::size_t>(n / 2)] = 0.0;
}

void require_same_grid(const PolarField& x, const PolarField& y, const char* what) {
  if (!x.rgrid().matches(y.rgrid()) || !(x.agrid() == y.agrid())) {
    throw Error(ErrorCode::grid_mismatch, std::string(what) + ": grids differ");
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<double> parse_args(std::string_view body, std::size_t expected,
                               std::string_view name) {
  std::vector<double> out;
  std::size_t start = 0;
  while (!body.empty()) {
    const std::size_t pos = body.find(',', start);
    out.push_back(parse_real(body.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  if (out.size() != expected) {
    std::ostringstream msg;
    msg << "signal '" << name << "' expects " << expected << " arguments, got "
        << out.size();
    throw Error(ErrorCode::parse, msg.str());
  }
  return out;
}

int as_int(double v, std::string_view what) {
  if (v != std::floor(v) || std::abs(v) > 1e6) {
    throw Error(ErrorCode::parse, std::string(what) + " must be an integer");
  }
  return static_cast<int>(v);
}

}  // namespace

RadialGrid RadialGrid::gauss_legendre(int n, double r_max) {
  if (n < 1) throw Error(ErrorCode::precondition, "radial grid needs n >= 1");
  if (!(r_max > 0.0) || !std::isfinite(r_max)) {
    throw Error(ErrorCode::precondition, "radial grid needs finite r_max > 0");
  }
  std::vector<double> x, w;
  legendre_rule(n, x, w);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = 0.5 * r_max * (1.0 + x[i]);
    w[i] = 0.5 * r_max * w[i];
  }
  return RadialGrid(r_max, std::move(x), std::move(w));
}

bool RadialGrid::matches(const RadialGrid& other, double rel_tol) const {
  if (nodes_.size() != other.nodes_.size()) return false;
  const double tol = rel_tol * std::max(r_max_, other.r_max_);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (std::abs(nodes_[i] - other.nodes_[i]) > tol) return false;
    if (std::abs(weights_[i] - other.weights_[i]) > tol) return false;
  }
  return true;
}

RadialGrid RadialGrid::scaled(double factor) const {
  if (!(factor > 0.0)) {
    throw Error(ErrorCode::precondition, "radial grid scale must be positive");
  }
  std::vector<double> x(nodes_), w(weights_);
  for (auto& v : x) v *= factor;
  for (auto& v : w) v *= factor;
  return RadialGrid(r_max_ * factor, std::move(x), std::move(w));
}

AngularGrid::AngularGrid(int n_theta) : n_(n_theta) {
  if (n_theta < 2 || n_theta % 2 != 0) {
    throw Error(ErrorCode::precondition,
                "angular grid size must be even and positive, got " +
                    std::to_string(n_theta));
  }
}

double AngularGrid::node(int j) const { return kTwoPi * j / n_; }

double AngularGrid::weight() const { return kTwoPi / n_; }

int required_angular_nodes(int n_max) { return 2 * n_max + 2; }

PolarField::PolarField(RadialGrid rgrid, AngularGrid agrid)
    : rgrid_(std::move(rgrid)),
      agrid_(agrid),
      samples_(static_cast<std::size_t>(rgrid_.size()) *
               static_cast<std::size_t>(agrid_.size())) {}

PolarField::PolarField(RadialGrid rgrid, AngularGrid agrid,
                       std::vector<Complex> samples)
    : rgrid_(std::move(rgrid)), agrid_(agrid), samples_(std::move(samples)) {
  const std::size_t expected = static_cast<std::size_t>(rgrid_.size()) *
                               static_cast<std::size_t>(agrid_.size());
  if (samples_.size() != expected) {
    throw Error(ErrorCode::grid_mismatch, "field sample count does not match grid");
  }
  for (const auto& z : samples_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(ErrorCode::domain, "field samples must be finite");
    }
  }
}

RadialProfile::RadialProfile(RadialGrid g, int n)
    : grid(std::move(g)), order(n), samples(static_cast<std::size_t>(grid.size())) {}

RadialProfile::RadialProfile(RadialGrid g, int n, std::vector<Complex> values)
    : grid(std::move(g)), order(n), samples(std::move(values)) {
  if (samples.size() != static_cast<std::size_t>(grid.size())) {
    throw Error(ErrorCode::grid_mismatch, "profile length does not match grid");
  }
}

HarmonicSpectrum::HarmonicSpectrum(int n_max, RadialGrid rgrid)
    : n_max_(n_max), rgrid_(std::move(rgrid)) {
  if (n_max < 0) throw Error(ErrorCode::precondition, "n_max must be non-negative");
  data_.assign(static_cast<std::size_t>(2 * n_max + 1) *
                   static_cast<std::size_t>(rgrid_.size()),
               Complex{});
}

std::size_t HarmonicSpectrum::offset(int n) const {
  if (n < -n_max_ || n > n_max_) {
    throw Error(ErrorCode::precondition,
                "order " + std::to_string(n) + " outside spectrum range");
  }
  return static_cast<std::size_t>(n + n_max_) * static_cast<std::size_t>(rgrid_.size());
}

std::span<Complex> HarmonicSpectrum::profile(int n) {
  return {data_.data() + offset(n), static_cast<std::size_t>(rgrid_.size())};
}

std::span<const Complex> HarmonicSpectrum::profile(int n) const {
  return {data_.data() + offset(n), static_cast<std::size_t>(rgrid_.size())};
}

RadialProfile HarmonicSpectrum::radial_profile(int n) const {
  const auto p = profile(n);
  return RadialProfile(rgrid_, n, std::vector<Complex>(p.begin(), p.end()));
}

std::vector<int> HarmonicSpectrum::support(double threshold) const {
  std::vector<int> orders;
  for (int n = -n_max_; n <= n_max_; ++n) {
    const auto p = profile(n);
    if (std::any_of(p.begin(), p.end(),
                    [&](const Complex& z) { return std::abs(z) > threshold; })) {
      orders.push_back(n);
    }
  }
  return orders;
}

HarmonicSpectrum decompose(const PolarField& field, int n_max) {
  const int nt = field.agrid().size();
  if (nt < required_angular_nodes(n_max)) {
    std::ostringstream msg;
    msg << "decompose: n_theta = " << nt << " aliases orders up to " << n_max
        << " (need n_theta >= " << required_angular_nodes(n_max) << ")";
    throw Error(ErrorCode::aliasing, msg.str());
  }
  HarmonicSpectrum out(n_max, field.rgrid());
  std::vector<Complex> twiddle(static_cast<std::size_t>(nt));
  for (int n = -n_max; n <= n_max; ++n) {
    for (int j = 0; j < nt; ++j) {
      // Reduce n*j mod nt so the phase argument stays small.
      const long long k = ((static_cast<long long>(n) * j) % nt + nt) % nt;
      twiddle[static_cast<std::size_t>(j)] =
          std::polar(1.0, -kTwoPi * static_cast<double>(k) / nt);
    }
    auto prof = out.profile(n);
    for (int i = 0; i < field.rgrid().size(); ++i) {
      Complex acc{};
      for (int j = 0; j < nt; ++j) acc += field.at(i, j) * twiddle[static_cast<std::size_t>(j)];
      prof[static_cast<std::size_t>(i)] = acc / static_cast<double>(nt);
    }
  }
  return out;
}

PolarField synthesize(const HarmonicSpectrum& spectrum, const AngularGrid& agrid) {
  const int nt = agrid.size();
  if (nt < required_angular_nodes(spectrum.n_max())) {
    std::ostringstream msg;
    msg << "synthesize: n_theta = " << nt << " cannot carry orders up to "
        << spectrum.n_max();
    throw Error(ErrorCode::aliasing, msg.str());
  }
  PolarField out(spectrum.rgrid(), agrid);
  std::vector<Complex> twiddle(static_cast<std::size_t>(nt));
  for (int n = -spectrum.n_max(); n <= spectrum.n_max(); ++n) {
    for (int j = 0; j < nt; ++j) {
      const long long k = ((static_cast<long long>(n) * j) % nt + nt) % nt;
      twiddle[static_cast<std::size_t>(j)] =
          std::polar(1.0, kTwoPi * static_cast<double>(k) / nt);
    }
    const auto prof = spectrum.profile(n);
    for (int i = 0; i < spectrum.rgrid().size(); ++i) {
      const Complex v = prof[static_cast<std::size_t>(i)];
      if (v == Complex{}) continue;
      for (int j = 0; j < nt; ++j) out.at(i, j) += v * twiddle[static_cast<std::size_t>(j)];
    }
  }
  return out;
}

Complex evaluate(const Signal& s, double r, double theta) {
  struct Visitor {
    double r, theta;
    Complex operator()(const signal::Gaussian& g) const {
      return std::exp(-r * r / (2.0 * g.sigma * g.sigma));
    }
    Complex operator()(const signal::Vortex& v) const {
      return std::exp(-r * r / (2.0 * v.sigma * v.sigma)) * std::polar(1.0, v.k * theta);
    }
    Complex operator()(const signal::Ring& g) const {
      const double x = r - g.r0;
      return std::exp(-x * x / (2.0 * g.width * g.width)) * std::polar(1.0, g.k * theta);
    }
    Complex operator()(const signal::AngularCos& a) const {
      return std::exp(-r * r / (2.0 * a.sigma * a.sigma)) * (1.0 + std::cos(a.m * theta));
    }
    Complex operator()(const signal::Zero&) const { return {}; }
  };
  return std::visit(Visitor{r, theta}, s);
}

PolarField builtin_signal(const Signal& s, const RadialGrid& rgrid,
                          const AngularGrid& agrid) {
  PolarField out(rgrid, agrid);
  for (int i = 0; i < rgrid.size(); ++i) {
    for (int j = 0; j < agrid.size(); ++j) {
      out.at(i, j) = evaluate(s, rgrid.node(i), agrid.node(j));
    }
  }
  return out;
}

double decay_radius(const Signal& s) {
  // e^{-x^2/2} < 1e-12 for x > 7.43; 8 widths is the documented default.
  struct Visitor {
    double operator()(const signal::Gaussian& g) const { return 8.0 * g.sigma; }
    double operator()(const signal::Vortex& v) const { return 8.0 * v.sigma; }
    double operator()(const signal::Ring& g) const { return g.r0 + 8.0 * g.width; }
    double operator()(const signal::AngularCos& a) const { return 8.0 * a.sigma; }
    double operator()(const signal::Zero&) const { return 1.0; }
  };
  return std::visit(Visitor{}, s);
}

bool radially_symmetric(const Signal& s) { return band_limit(s) == 0; }

int band_limit(const Signal& s) {
  struct Visitor {
    int operator()(const signal::Gaussian&) const { return 0; }
    int operator()(const signal::Vortex& v) const { return std::abs(v.k); }
    int operator()(const signal::Ring& g) const { return std::abs(g.k); }
    int operator()(const signal::AngularCos& a) const { return std::abs(a.m); }
    int operator()(const signal::Zero&) const { return 0; }
  };
  return std::visit(Visitor{}, s);
}

Signal parse_signal(std::string_view text) {
  text = trim(text);
  const std::size_t colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  const std::string_view body =
      colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  auto positive = [&](double v, const char* what) {
    if (!(v > 0.0)) {
      throw Error(ErrorCode::parse, std::string(what) + " must be positive in '" +
                                        std::string(text) + "'");
    }
    return v;
  };
  if (name == "zero") {
    if (!body.empty()) throw Error(ErrorCode::parse, "signal 'zero' takes no arguments");
    return signal::Zero{};
  }
  if (name == "gaussian") {
    const auto v = parse_args(body, 1, name);
    return signal::Gaussian{positive(v[0], "sigma")};
  }
  if (name == "vortex") {
    const auto v = parse_args(body, 2, name);
    return signal::Vortex{positive(v[0], "sigma"), as_int(v[1], "k")};
  }
  if (name == "ring") {
    const auto v = parse_args(body, 3, name);
    if (!(v[0] >= 0.0)) throw Error(ErrorCode::parse, "ring radius must be >= 0");
    return signal::Ring{v[0], positive(v[1], "width"), as_int(v[2], "k")};
  }
  if (name == "angular_cos") {
    const auto v = parse_args(body, 2, name);
    return signal::AngularCos{positive(v[0], "sigma"), as_int(v[1], "m")};
  }
  throw Error(ErrorCode::parse,
              "unknown signal '" + std::string(text) +
                  "' (expected gaussian:s, vortex:s,k, ring:r0,w,k, "
                  "angular_cos:s,m, zero)");
}

std::string to_string(const Signal& s) {
  struct Visitor {
    std::string operator()(const signal::Gaussian& g) const {
      return "gaussian:" + format_real(g.sigma);
    }
    std::string operator()(const signal::Vortex& v) const {
      return "vortex:" + format_real(v.sigma) + "," + std::to_string(v.k);
    }
    std::string operator()(const signal::Ring& g) const {
      return "ring:" + format_real(g.r0) + "," + format_real(g.width) + "," +
             std::to_string(g.k);
    }
    std::string operator()(const signal::AngularCos& a) const {
      return "angular_cos:" + format_real(a.sigma) + "," + std::to_string(a.m);
    }
    std::string operator()(const signal::Zero&) const { return "zero"; }
  };
  return std::visit(Visitor{}, s);
}

double l2_norm(const PolarField& f) {
  double total = 0.0;
  const double dtheta = f.agrid().weight();
  for (int i = 0; i < f.rgrid().size(); ++i) {
    double ring = 0.0;
    for (int j = 0; j < f.agrid().size(); ++j) ring += std::norm(f.at(i, j));
    total += f.rgrid().weight(i) * f.rgrid().node(i) * ring * dtheta;
  }
  return std::sqrt(total);
}

double l2_norm(std::span<const Complex> profile, const RadialGrid& grid) {
  if (profile.size() != static_cast<std::size_t>(grid.size())) {
    throw Error(ErrorCode::grid_mismatch, "profile length does not match grid");
  }
  double total = 0.0;
  for (int i = 0; i < grid.size(); ++i) {
    total += grid.weight(i) * grid.node(i) * std::norm(profile[static_cast<std::size_t>(i)]);
  }
  return std::sqrt(total);
}

double relative_l2(const PolarField& test, const PolarField& ref) {
  require_same_grid(test, ref, "relative_l2");
  PolarField diff = test + (-1.0) * ref;
  const double denom = l2_norm(ref);
  const double num = l2_norm(diff);
  return denom > 0.0 ? num / denom : num;
}

double relative_l2(std::span<const Complex> test, std::span<const Complex> ref,
                   const RadialGrid& grid) {
  if (test.size() != ref.size()) {
    throw Error(ErrorCode::grid_mismatch, "relative_l2: profile lengths differ");
  }
  std::vector<Complex> diff(test.size());
  for (std::size_t i = 0; i < test.size(); ++i) diff[i] = test[i] - ref[i];
  const double denom = l2_norm(ref, grid);
  const double num = l2_norm(diff, grid);
  return denom > 0.0 ? num / denom : num;
}

PolarField operator+(const PolarField& x, const PolarField& y) {
  require_same_grid(x, y, "field sum");
  PolarField out = x;
  auto o = out.samples();
  const auto b = y.samples();
  for (std::size_t k = 0; k < o.size(); ++k) o[k] += b[k];
  return out;
}

PolarField operator*(Complex s, const PolarField& x) {
  PolarField out = x;
  for (auto& z : out.samples()) z *= s;
  return out;
}

PolarField pointwise_product(const PolarField& x, const PolarField& y) {
  require_same_grid(x, y, "pointwise product");
  PolarField out = x;
  auto o = out.samples();
  const auto b = y.samples();
  for (std::size_t k = 0; k < o.size(); ++k) o[k] *= b[k];
  return out;
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_field_csv(std::ostream& out, const PolarField& field) {
  out << "r,theta,re,im\n";
  for (int i = 0; i < field.rgrid().size(); ++i) {
    const std::string r = format_real(field.rgrid().node(i));
    for (int j = 0; j < field.agrid().size(); ++j) {
      const Complex z = field.at(i, j);
      out << r << ',' << format_real(field.agrid().node(j)) << ','
          << format_real(z.real()) << ',' << format_real(z.imag()) << '\n';
    }
  }
}

PolarField read_field_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != "r,theta,re,im") {
    throw Error(ErrorCode::parse, "field CSV must start with header 'r,theta,re,im'");
  }
  std::vector<double> radii;
  std::vector<double> thetas;
  std::vector<Complex> samples;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    const std::string_view text = trim(line);
    if (text.empty()) continue;
    double v[4];
    std::size_t start = 0;
    for (int k = 0; k < 4; ++k) {
      const std::size_t pos = text.find(',', start);
      if ((k < 3) == (pos == std::string_view::npos)) {
        throw Error(ErrorCode::parse, "field CSV row " + std::to_string(row) +
                                          ": expected 4 columns");
      }
      v[k] = parse_real(text.substr(start, pos - start));
      start = pos + 1;
    }
    if (radii.empty() || v[0] != radii.back()) {
      radii.push_back(v[0]);
    }
    if (radii.size() == 1) thetas.push_back(v[1]);
    samples.emplace_back(v[2], v[3]);
  }
  if (radii.empty()) throw Error(ErrorCode::parse, "field CSV has no samples");
  const int n_theta = static_cast<int>(thetas.size());
  if (samples.size() != radii.size() * thetas.size()) {
    throw Error(ErrorCode::grid_mismatch, "field CSV is not a full radial x angular grid");
  }
  const AngularGrid agrid(n_theta);
  for (int j = 0; j < n_theta; ++j) {
    if (std::abs(thetas[static_cast<std::size_t>(j)] - agrid.node(j)) > 1e-12) {
      throw Error(ErrorCode::grid_mismatch, "field CSV angles are not uniform 2 pi j / n");
    }
  }
  const int n_r = static_cast<int>(radii.size());
  const RadialGrid unit = RadialGrid::gauss_legendre(n_r, 1.0);
  const RadialGrid rgrid =
      RadialGrid::gauss_legendre(n_r, radii.front() / unit.node(0));
  for (int i = 0; i < n_r; ++i) {
    if (std::abs(rgrid.node(i) - radii[static_cast<std::size_t>(i)]) >
        1e-12 * rgrid.r_max()) {
      throw Error(ErrorCode::grid_mismatch,
                  "field CSV radial nodes do not form a Gauss-Legendre grid");
    }
  }
  return PolarField(rgrid, agrid, std::move(samples));
}

}  // namespace olct
