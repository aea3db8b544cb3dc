#include "olct/olct.h"

#include <cstring>
#include <fstream>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "olct/error.hpp"
#include "olct/json_io.hpp"
#include "olct/parallel.hpp"
#include "olct/special_functions.hpp"
#include "olct/theorems.hpp"
#include "olct/transforms.hpp"

struct olct_field {
  olct::PolarField field;
};

struct olct_spectrum {
  olct::HarmonicSpectrum spectrum;
  olct::OlctParams params;
};

struct olct_reports {
  std::vector<olct::VerificationReport> reports;
};

namespace {

constexpr int kNullArgument = OLCT_ERR_NULL_ARGUMENT;
constexpr int kInternal = OLCT_ERR_INTERNAL;

thread_local std::string last_error;

template <typename Fn>
int guard(Fn&& fn) {
  try {
    last_error.clear();
    fn();
    return OLCT_OK;
  } catch (const olct::Error& e) {
    last_error = e.what();
    return static_cast<int>(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return kInternal;
  } catch (const std::exception& e) {
    last_error = e.what();
    return kInternal;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw olct::Error(static_cast<olct::ErrorCode>(kNullArgument), what);
}

olct::OlctParams from_c(const olct_params& p) {
  return {p.a, p.b, p.c, p.d, p.tau, p.eta};
}

olct_params to_c(const olct::OlctParams& p) { return {p.a, p.b, p.c, p.d, p.tau, p.eta}; }

olct::RadialGrid radial(const olct_grid_spec& g) {
  return olct::RadialGrid::gauss_legendre(g.n_r, g.r_max);
}

std::ofstream open_out(const char* path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw olct::Error(olct::ErrorCode::io, std::string("cannot open ") + path);
  return out;
}

void close_out(std::ofstream& out, const char* path) {
  out.close();
  if (!out) throw olct::Error(olct::ErrorCode::io, std::string("write failed: ") + path);
}

}  // namespace

extern "C" {

const char* olct_status_name(int status) {
  if (status == kNullArgument) return "null_argument";
  if (status == kInternal) return "internal";
  return olct::error_code_name(static_cast<olct::ErrorCode>(status));
}

const char* olct_last_error(void) { return last_error.c_str(); }

int olct_set_threads(int n) {
  return guard([&] { olct::set_thread_count(n); });
}

int olct_params_parse(const char* text, olct_params* out) {
  return guard([&] {
    require(text, "text is null");
    require(out, "out is null");
    *out = to_c(olct::parse_params(text));
  });
}

int olct_preset_parse(const char* text, olct_params* out) {
  return guard([&] {
    require(text, "text is null");
    require(out, "out is null");
    *out = to_c(olct::special_case(olct::parse_preset(text)));
  });
}

int olct_params_validate(const olct_params* p) {
  return guard([&] {
    require(p, "params is null");
    olct::require_forward(from_c(*p));
  });
}

int olct_params_to_json(const olct_params* p, char* buf, size_t len, size_t* written) {
  return guard([&] {
    require(p, "params is null");
    const std::string text = olct::dump(olct::to_json(from_c(*p)), -1);
    if (written) *written = text.size();
    if (buf == nullptr || len == 0) return;
    if (text.size() + 1 > len) {
      throw olct::Error(olct::ErrorCode::precondition, "buffer too small");
    }
    std::memcpy(buf, text.c_str(), text.size() + 1);
  });
}

int olct_bessel_j(int n, double x, double* out) {
  return guard([&] {
    require(out, "out is null");
    *out = olct::bessel_j(n, x);
  });
}

int olct_field_from_signal(const char* signal, const olct_grid_spec* grid, olct_field** out) {
  return guard([&] {
    require(signal, "signal is null");
    require(grid, "grid is null");
    require(out, "out is null");
    const olct::Signal s = olct::parse_signal(signal);
    *out = new olct_field{olct::builtin_signal(s, radial(*grid), olct::AngularGrid(grid->n_theta))};
  });
}

int olct_field_read_csv(const char* path, olct_field** out) {
  return guard([&] {
    require(path, "path is null");
    require(out, "out is null");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw olct::Error(olct::ErrorCode::io, std::string("cannot open ") + path);
    *out = new olct_field{olct::read_field_csv(in)};
  });
}

int olct_field_write_csv(const olct_field* f, const char* path) {
  return guard([&] {
    require(f, "field is null");
    require(path, "path is null");
    auto out = open_out(path);
    olct::write_field_csv(out, f->field);
    close_out(out, path);
  });
}

int olct_field_shape(const olct_field* f, olct_grid_spec* out) {
  return guard([&] {
    require(f, "field is null");
    require(out, "out is null");
    *out = {f->field.rgrid().size(), f->field.rgrid().r_max(), f->field.agrid().size()};
  });
}

int olct_field_sample(const olct_field* f, int i, int j, double* re, double* im) {
  return guard([&] {
    require(f, "field is null");
    require(re, "re is null");
    require(im, "im is null");
    if (i < 0 || i >= f->field.rgrid().size() || j < 0 || j >= f->field.agrid().size()) {
      throw olct::Error(olct::ErrorCode::domain, "sample index out of range");
    }
    const auto v = f->field.at(i, j);
    *re = v.real();
    *im = v.imag();
  });
}

int olct_field_relative_l2(const olct_field* test, const olct_field* ref, double* out) {
  return guard([&] {
    require(test, "test is null");
    require(ref, "ref is null");
    require(out, "out is null");
    *out = olct::relative_l2(test->field, ref->field);
  });
}

void olct_field_free(olct_field* f) { delete f; }

int olct_transform(const olct_field* f, const olct_params* p, int path, int n_max,
                   olct_field** out) {
  return guard([&] {
    require(f, "field is null");
    require(p, "params is null");
    require(out, "out is null");
    const auto A = from_c(*p);
    olct::require_forward(A);
    const auto out_r = olct::default_output_grid(A, f->field.rgrid());
    switch (path) {
      case OLCT_PATH_DIRECT:
        *out = new olct_field{olct::olct2d_polar(f->field, A, out_r, f->field.agrid())};
        return;
      case OLCT_PATH_HARMONIC:
        *out = new olct_field{
            olct::olct_via_harmonics(f->field, A, n_max, out_r, f->field.agrid())};
        return;
      default:
        throw olct::Error(olct::ErrorCode::precondition, "unknown path");
    }
  });
}

int olct_inverse(const olct_field* F, const olct_params* p, int path, int n_max,
                 const olct_grid_spec* grid, olct_field** out) {
  return guard([&] {
    require(F, "field is null");
    require(p, "params is null");
    require(grid, "grid is null");
    require(out, "out is null");
    const auto A = from_c(*p);
    const auto out_r = radial(*grid);
    const olct::AngularGrid out_a(grid->n_theta);
    switch (path) {
      case OLCT_PATH_DIRECT:
        *out = new olct_field{olct::inverse_olct2d_polar(F->field, A, out_r, out_a)};
        return;
      case OLCT_PATH_HARMONIC: {
        const auto spec = olct::inverse_olct_spectrum(olct::decompose(F->field, n_max), A, out_r);
        *out = new olct_field{olct::synthesize(spec, out_a)};
        return;
      }
      default:
        throw olct::Error(olct::ErrorCode::precondition, "unknown path");
    }
  });
}

int olct_spectrum_compute(const olct_field* f, const olct_params* p, int n_max,
                          olct_spectrum** out) {
  return guard([&] {
    require(f, "field is null");
    require(p, "params is null");
    require(out, "out is null");
    const auto A = from_c(*p);
    olct::require_forward(A);
    const auto out_r = olct::default_output_grid(A, f->field.rgrid());
    *out = new olct_spectrum{olct::olct_spectrum(f->field, A, n_max, out_r), A};
  });
}

int olct_spectrum_synthesize(const olct_spectrum* s, int n_theta, olct_field** out) {
  return guard([&] {
    require(s, "spectrum is null");
    require(out, "out is null");
    *out = new olct_field{olct::synthesize(s->spectrum, olct::AngularGrid(n_theta))};
  });
}

int olct_spectrum_write_json(const olct_spectrum* s, const char* path) {
  return guard([&] {
    require(s, "spectrum is null");
    require(path, "path is null");
    auto out = open_out(path);
    out << olct::dump(olct::to_json(s->spectrum, s->params)) << '\n';
    close_out(out, path);
  });
}

void olct_spectrum_free(olct_spectrum* s) { delete s; }

int olct_verify(const char* signal, const olct_params* p, const olct_suite_config* config,
                olct_reports** out) {
  return guard([&] {
    require(signal, "signal is null");
    require(p, "params is null");
    require(config, "config is null");
    require(out, "out is null");
    olct::SuiteConfig c;
    c.n_r = config->grid.n_r;
    c.r_max = config->grid.r_max;
    c.n_theta = config->grid.n_theta;
    c.n_max = config->n_max;
    c.tol = config->tol;
    *out = new olct_reports{olct::run_identity_suite(olct::parse_signal(signal), from_c(*p), c)};
  });
}

int olct_reports_count(const olct_reports* r, size_t* out) {
  return guard([&] {
    require(r, "reports is null");
    require(out, "out is null");
    *out = r->reports.size();
  });
}

int olct_reports_get(const olct_reports* r, size_t index, olct_report_info* out) {
  return guard([&] {
    require(r, "reports is null");
    require(out, "out is null");
    if (index >= r->reports.size()) {
      throw olct::Error(olct::ErrorCode::domain, "report index out of range");
    }
    const auto& rep = r->reports[index];
    *out = {rep.identity.c_str(), rep.residual, rep.tolerance, rep.pass ? 1 : 0,
            rep.required ? 1 : 0};
  });
}

int olct_reports_required_pass(const olct_reports* r, int* out) {
  return guard([&] {
    require(r, "reports is null");
    require(out, "out is null");
    *out = olct::required_pass(r->reports) ? 1 : 0;
  });
}

int olct_reports_write_json(const olct_reports* r, const char* path) {
  return guard([&] {
    require(r, "reports is null");
    require(path, "path is null");
    auto out = open_out(path);
    out << olct::dump(olct::to_json(r->reports)) << '\n';
    close_out(out, path);
  });
}

void olct_reports_free(olct_reports* r) { delete r; }

}  // extern "C"
