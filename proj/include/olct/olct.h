/* C interface to the polar offset linear canonical transform library. */
#ifndef OLCT_OLCT_H
#define OLCT_OLCT_H

#include <stddef.h>

#if defined(_WIN32)
#  define OLCT_API __declspec(dllexport)
#else
#  define OLCT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Every function returning int returns one of these. */
enum {
  OLCT_OK = 0,
  OLCT_ERR_DOMAIN = 1,
  OLCT_ERR_ORDER_CAP = 2,
  OLCT_ERR_INVALID_PARAMS = 3,
  OLCT_ERR_SINGULAR_PARAMS = 4,
  OLCT_ERR_UNSUPPORTED_BRANCH = 5,
  OLCT_ERR_ALIASING = 6,
  OLCT_ERR_PRECONDITION = 7,
  OLCT_ERR_GRID_MISMATCH = 8,
  OLCT_ERR_IO = 9,
  OLCT_ERR_PARSE = 10,
  OLCT_ERR_TRUNCATION = 11,
  OLCT_ERR_NULL_ARGUMENT = 12,
  OLCT_ERR_INTERNAL = 13
};

enum { OLCT_PATH_DIRECT = 0, OLCT_PATH_HARMONIC = 1 };

typedef struct olct_params {
  double a, b, c, d, tau, eta;
} olct_params;

/* Gauss-Legendre radial grid with n_r nodes on [0, r_max], n_theta angles. */
typedef struct olct_grid_spec {
  int n_r;
  double r_max;
  int n_theta;
} olct_grid_spec;

typedef struct olct_suite_config {
  olct_grid_spec grid;
  int n_max;
  double tol;
} olct_suite_config;

typedef struct olct_report_info {
  const char* identity; /* owned by the report set */
  double residual;
  double tolerance;
  int pass;
  int required;
} olct_report_info;

typedef struct olct_field olct_field;
typedef struct olct_spectrum olct_spectrum;
typedef struct olct_reports olct_reports;

OLCT_API const char* olct_status_name(int status);
/* Message of the last failure on the calling thread, "" if none. */
OLCT_API const char* olct_last_error(void);

/* 0 selects the hardware concurrency. */
OLCT_API int olct_set_threads(int n);

OLCT_API int olct_params_parse(const char* text, olct_params* out);
OLCT_API int olct_preset_parse(const char* text, olct_params* out);
OLCT_API int olct_params_validate(const olct_params* p);
/* Writes the six parameters as a JSON object (no trailing newline). */
OLCT_API int olct_params_to_json(const olct_params* p, char* buf, size_t len,
                                 size_t* written);

OLCT_API int olct_bessel_j(int n, double x, double* out);

OLCT_API int olct_field_from_signal(const char* signal, const olct_grid_spec* grid,
                                    olct_field** out);
OLCT_API int olct_field_read_csv(const char* path, olct_field** out);
OLCT_API int olct_field_write_csv(const olct_field* f, const char* path);
OLCT_API int olct_field_shape(const olct_field* f, olct_grid_spec* out);
OLCT_API int olct_field_sample(const olct_field* f, int i, int j, double* re, double* im);
OLCT_API int olct_field_relative_l2(const olct_field* test, const olct_field* ref,
                                    double* out);
OLCT_API void olct_field_free(olct_field* f);

/* Output on the default radial grid of p, angles as the input. n_max is used
   by the harmonic path only. */
OLCT_API int olct_transform(const olct_field* f, const olct_params* p, int path,
                            int n_max, olct_field** out);
/* Inverse transform onto grid. */
OLCT_API int olct_inverse(const olct_field* F, const olct_params* p, int path, int n_max,
                          const olct_grid_spec* grid, olct_field** out);

OLCT_API int olct_spectrum_compute(const olct_field* f, const olct_params* p, int n_max,
                                   olct_spectrum** out);
OLCT_API int olct_spectrum_synthesize(const olct_spectrum* s, int n_theta,
                                      olct_field** out);
OLCT_API int olct_spectrum_write_json(const olct_spectrum* s, const char* path);
OLCT_API void olct_spectrum_free(olct_spectrum* s);

OLCT_API int olct_verify(const char* signal, const olct_params* p,
                         const olct_suite_config* config, olct_reports** out);
OLCT_API int olct_reports_count(const olct_reports* r, size_t* out);
OLCT_API int olct_reports_get(const olct_reports* r, size_t index, olct_report_info* out);
/* 1 when every required identity passed. */
OLCT_API int olct_reports_required_pass(const olct_reports* r, int* out);
OLCT_API int olct_reports_write_json(const olct_reports* r, const char* path);
OLCT_API void olct_reports_free(olct_reports* r);

#ifdef __cplusplus
}
#endif

#endif
