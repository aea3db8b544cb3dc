#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "olct/olct.h"

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const char* name) {
  const auto dir = fs::temp_directory_path() / "olct_c_api_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("status reporting") {
  CHECK(std::strcmp(olct_status_name(OLCT_OK), "ok") == 0);
  CHECK(std::strcmp(olct_status_name(OLCT_ERR_SINGULAR_PARAMS), "singular_params") == 0);
  CHECK(std::strcmp(olct_status_name(OLCT_ERR_NULL_ARGUMENT), "null_argument") == 0);

  olct_params p{};
  CHECK(olct_params_parse(nullptr, &p) == OLCT_ERR_NULL_ARGUMENT);
  CHECK(std::strlen(olct_last_error()) > 0);
  CHECK(olct_params_parse("1,1,1,1,0,0", &p) == OLCT_ERR_INVALID_PARAMS);
  CHECK(olct_params_parse("1,2", &p) == OLCT_ERR_PARSE);
  CHECK(olct_params_parse("1,1,0,1,0.5,0.5", &p) == OLCT_OK);
  CHECK(std::strlen(olct_last_error()) == 0);
  CHECK(p.tau == 0.5);
  CHECK(olct_preset_parse("fresnel:2", &p) == OLCT_OK);
  CHECK(p.b == 2.0);
  olct_params neg{1, -1, 0, 1, 0, 0};
  CHECK(olct_params_validate(&neg) != OLCT_OK);
}

TEST_CASE("params to JSON") {
  const olct_params p{0, 1, -1, 0, 0, 0};
  char buf[128];
  size_t n = 0;
  REQUIRE(olct_params_to_json(&p, buf, sizeof buf, &n) == OLCT_OK);
  CHECK(std::string(buf) == R"({"a":0,"b":1,"c":-1,"d":0,"tau":0,"eta":0})");
  CHECK(n == std::strlen(buf));
  char tiny[4];
  CHECK(olct_params_to_json(&p, tiny, sizeof tiny, &n) == OLCT_ERR_PRECONDITION);
}

TEST_CASE("Bessel through the C interface") {
  double v = 0.0;
  REQUIRE(olct_bessel_j(0, 1.0, &v) == OLCT_OK);
  CHECK(v == doctest::Approx(0.76519768655796655145).epsilon(1e-14));
  CHECK(olct_bessel_j(1000, 1.0, &v) == OLCT_ERR_ORDER_CAP);
}

TEST_CASE("transform, inverse and spectrum") {
  const olct_grid_spec grid{48, 6.0, 64};
  olct_field* f = nullptr;
  REQUIRE(olct_field_from_signal("gaussian:1", &grid, &f) == OLCT_OK);
  olct_grid_spec shape{};
  REQUIRE(olct_field_shape(f, &shape) == OLCT_OK);
  CHECK(shape.n_r == 48);
  CHECK(shape.n_theta == 64);

  olct_params p{};
  REQUIRE(olct_params_parse("1,1,0,1,0,0", &p) == OLCT_OK);
  olct_field* direct = nullptr;
  olct_field* harmonic = nullptr;
  REQUIRE(olct_transform(f, &p, OLCT_PATH_DIRECT, 8, &direct) == OLCT_OK);
  REQUIRE(olct_transform(f, &p, OLCT_PATH_HARMONIC, 8, &harmonic) == OLCT_OK);
  double r = 1.0;
  REQUIRE(olct_field_relative_l2(harmonic, direct, &r) == OLCT_OK);
  CHECK(r < 1e-6);

  olct_field* back = nullptr;
  REQUIRE(olct_inverse(harmonic, &p, OLCT_PATH_HARMONIC, 8, &grid, &back) == OLCT_OK);
  REQUIRE(olct_field_relative_l2(back, f, &r) == OLCT_OK);
  CHECK(r < 1e-7);  // e^{-18} tail beyond r = 6

  double re = 0, im = 0;
  CHECK(olct_field_sample(back, 0, 0, &re, &im) == OLCT_OK);
  CHECK(re == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(olct_field_sample(back, 48, 0, &re, &im) == OLCT_ERR_DOMAIN);
  CHECK(olct_transform(f, &p, 7, 8, &back) == OLCT_ERR_PRECONDITION);
  CHECK(olct_transform(f, &p, OLCT_PATH_HARMONIC, 40, &back) == OLCT_ERR_ALIASING);

  olct_spectrum* s = nullptr;
  REQUIRE(olct_spectrum_compute(f, &p, 8, &s) == OLCT_OK);
  const auto json = scratch("spectrum.json");
  REQUIRE(olct_spectrum_write_json(s, json.string().c_str()) == OLCT_OK);
  const auto text = slurp(json);
  CHECK(text.find("\"profiles\"") != std::string::npos);
  CHECK(text.find("\"tau\": 0") != std::string::npos);

  const auto csv = scratch("field.csv");
  REQUIRE(olct_field_write_csv(direct, csv.string().c_str()) == OLCT_OK);
  olct_field* read = nullptr;
  REQUIRE(olct_field_read_csv(csv.string().c_str(), &read) == OLCT_OK);
  REQUIRE(olct_field_relative_l2(read, direct, &r) == OLCT_OK);
  CHECK(r == 0.0);
  CHECK(olct_field_read_csv("/nonexistent/x.csv", &read) == OLCT_ERR_IO);

  olct_spectrum_free(s);
  olct_field_free(read);
  olct_field_free(back);
  olct_field_free(harmonic);
  olct_field_free(direct);
  olct_field_free(f);
  olct_field_free(nullptr);
}

TEST_CASE("singular parameters surface their code") {
  const olct_grid_spec grid{16, 4.0, 8};
  olct_field* f = nullptr;
  REQUIRE(olct_field_from_signal("gaussian:1", &grid, &f) == OLCT_OK);
  const olct_params p{0, 1, -1, 0, 0.5, 0};
  olct_field* out = nullptr;
  CHECK(olct_transform(f, &p, OLCT_PATH_DIRECT, 2, &out) == OLCT_ERR_SINGULAR_PARAMS);
  CHECK(out == nullptr);
  olct_field_free(f);
}

TEST_CASE("verification suite") {
  olct_params p{};
  REQUIRE(olct_preset_parse("ft", &p) == OLCT_OK);
  const olct_suite_config c{{48, 8.0, 24}, 8, 1e-6};
  olct_reports* reps = nullptr;
  REQUIRE(olct_verify("gaussian:1", &p, &c, &reps) == OLCT_OK);
  size_t n = 0;
  REQUIRE(olct_reports_count(reps, &n) == OLCT_OK);
  CHECK(n == 12);
  olct_report_info info{};
  REQUIRE(olct_reports_get(reps, 0, &info) == OLCT_OK);
  CHECK(std::string(info.identity) == "ft_reduction");
  CHECK(olct_reports_get(reps, n, &info) == OLCT_ERR_DOMAIN);
  int ok = -1;
  REQUIRE(olct_reports_required_pass(reps, &ok) == OLCT_OK);
  CHECK(ok == 0);
  const auto path = scratch("report.json");
  REQUIRE(olct_reports_write_json(reps, path.string().c_str()) == OLCT_OK);
  CHECK(slurp(path).rfind("[\n  {\n    \"identity\": \"ft_reduction\"", 0) == 0);
  olct_reports_free(reps);
}
