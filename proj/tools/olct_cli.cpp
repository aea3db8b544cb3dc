// Command-line front end. Talks to the library through the C interface only.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "olct/olct.h"

namespace fs = std::filesystem;

namespace {

struct RunConfig {
  std::string params;
  std::string preset;
  std::string signal = "gaussian:1";
  int n_r = 128;
  double r_max = 8.0;
  int n_theta = 64;
  int n_max = 16;
  std::string path = "both";
  std::string out = ".";
  double tol = 1e-6;
  int threads = 0;
  std::string config;
};

struct Failure {
  int exit_code;
  std::string message;
};

std::string real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void check(int status, const std::string& context) {
  if (status != OLCT_OK) {
    throw Failure{3, context + ": " + olct_status_name(status) + ": " + olct_last_error()};
  }
}

// RAII owners for the C handles.
struct Field {
  olct_field* p = nullptr;
  Field() = default;
  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;
  ~Field() { olct_field_free(p); }
};

struct Spectrum {
  olct_spectrum* p = nullptr;
  ~Spectrum() { olct_spectrum_free(p); }
};

struct Reports {
  olct_reports* p = nullptr;
  ~Reports() { olct_reports_free(p); }
};

// Values from the config file fill every option not given on the command line.
void apply_config_file(RunConfig& c, const CLI::App& app) {
  if (c.config.empty()) return;
  std::ifstream in(c.config);
  if (!in) throw Failure{2, "config: cannot open " + c.config};
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Failure{2, std::string("config: ") + e.what()};
  }
  if (!j.is_object()) throw Failure{2, "config: expected a JSON object"};

  const auto take = [&](const char* key, const char* flag, auto& field) {
    const auto it = j.find(key);
    if (it == j.end() || app.count(flag) > 0) return;
    try {
      it->get_to(field);
    } catch (const nlohmann::json::exception&) {
      throw Failure{2, std::string("config: field \"") + key + "\" has the wrong type"};
    }
  };
  if (const auto it = j.find("params"); it != j.end() && app.count("--params") == 0) {
    if (it->is_object()) {
      for (const char* k : {"a", "b", "c", "d", "tau", "eta"}) {
        if (!it->contains(k) || !(*it)[k].is_number()) {
          throw Failure{2, std::string("config: params.") + k + " must be a number"};
        }
      }
      const auto& p = *it;
      c.params = real(p["a"].get<double>()) + "," + real(p["b"].get<double>()) + "," +
                 real(p["c"].get<double>()) + "," + real(p["d"].get<double>()) + "," +
                 real(p["tau"].get<double>()) + "," + real(p["eta"].get<double>());
    } else {
      take("params", "--params", c.params);
    }
  }
  take("preset", "--preset", c.preset);
  take("signal", "--signal", c.signal);
  take("nr", "--nr", c.n_r);
  take("rmax", "--rmax", c.r_max);
  take("ntheta", "--ntheta", c.n_theta);
  take("nmax", "--nmax", c.n_max);
  take("path", "--path", c.path);
  take("out", "--out", c.out);
  take("tol", "--tol", c.tol);
  take("threads", "--threads", c.threads);
}

olct_params resolve_params(const RunConfig& c) {
  if (!c.params.empty() && !c.preset.empty()) {
    throw Failure{2, "params: give either --params or --preset, not both"};
  }
  olct_params p{};
  if (!c.params.empty()) {
    check(olct_params_parse(c.params.c_str(), &p), "params");
  } else {
    check(olct_preset_parse(c.preset.empty() ? "ft" : c.preset.c_str(), &p), "preset");
  }
  check(olct_params_validate(&p), "params");
  return p;
}

void validate_grid(const RunConfig& c) {
  if (c.n_r < 2) throw Failure{2, "nr: need at least 2 radial nodes"};
  if (!(c.r_max > 0.0)) throw Failure{2, "rmax: must be positive"};
  if (c.n_theta < 2 || c.n_theta % 2 != 0) throw Failure{2, "ntheta: must be even and >= 2"};
  if (c.n_max < 0) throw Failure{2, "nmax: must be >= 0"};
  if (c.n_theta < 2 * c.n_max + 2) {
    throw Failure{2, "ntheta: " + std::to_string(c.n_theta) + " aliases orders up to nmax=" +
                         std::to_string(c.n_max) + " (need >= " +
                         std::to_string(2 * c.n_max + 2) + ")"};
  }
  if (!(c.tol > 0.0)) throw Failure{2, "tol: must be positive"};
}

std::vector<int> paths(const std::string& p) {
  if (p == "direct") return {OLCT_PATH_DIRECT};
  if (p == "harmonic") return {OLCT_PATH_HARMONIC};
  return {OLCT_PATH_DIRECT, OLCT_PATH_HARMONIC};
}

const char* path_name(int path) { return path == OLCT_PATH_DIRECT ? "direct" : "harmonic"; }

olct_grid_spec grid_of(const RunConfig& c) { return {c.n_r, c.r_max, c.n_theta}; }

std::string out_file(const RunConfig& c, const std::string& name) {
  return (fs::path(c.out) / name).string();
}

void prepare(RunConfig& c) {
  validate_grid(c);
  check(olct_set_threads(c.threads), "threads");
  std::error_code ec;
  fs::create_directories(c.out, ec);
  if (ec) throw Failure{2, "out: cannot create " + c.out + ": " + ec.message()};
}

void make_signal(const RunConfig& c, Field& f) {
  const olct_grid_spec g = grid_of(c);
  check(olct_field_from_signal(c.signal.c_str(), &g, &f.p), "signal");
}

void write_csv(const Field& f, const std::string& file) {
  check(olct_field_write_csv(f.p, file.c_str()), "write " + file);
  std::cout << "wrote " << file << '\n';
}

void forward(const RunConfig& c, const olct_params& p, const Field& f, int path, Field& out) {
  if (path == OLCT_PATH_HARMONIC) {
    Spectrum s;
    check(olct_spectrum_compute(f.p, &p, c.n_max, &s.p), "harmonic transform");
    check(olct_spectrum_synthesize(s.p, c.n_theta, &out.p), "harmonic transform");
  } else {
    check(olct_transform(f.p, &p, OLCT_PATH_DIRECT, c.n_max, &out.p), "direct transform");
  }
}

int run_transform(RunConfig& c) {
  prepare(c);
  const olct_params p = resolve_params(c);
  Field f;
  make_signal(c, f);
  std::vector<int> ps = paths(c.path);
  Field results[2];
  for (int path : ps) {
    if (path == OLCT_PATH_HARMONIC) {
      Spectrum s;
      check(olct_spectrum_compute(f.p, &p, c.n_max, &s.p), "harmonic transform");
      check(olct_spectrum_synthesize(s.p, c.n_theta, &results[path].p), "harmonic transform");
      const std::string json = out_file(c, "spectrum.json");
      check(olct_spectrum_write_json(s.p, json.c_str()), "write " + json);
      std::cout << "wrote " << json << '\n';
    } else {
      forward(c, p, f, path, results[path]);
    }
    write_csv(results[path], out_file(c, std::string("transform_") + path_name(path) + ".csv"));
  }
  if (ps.size() == 2) {
    double r = 0.0;
    check(olct_field_relative_l2(results[OLCT_PATH_HARMONIC].p, results[OLCT_PATH_DIRECT].p, &r),
          "residual");
    std::cout << "residual harmonic_vs_direct " << real(r) << '\n';
  }
  return 0;
}

int run_invert(RunConfig& c) {
  prepare(c);
  const olct_params p = resolve_params(c);
  Field f;
  make_signal(c, f);
  const olct_grid_spec g = grid_of(c);
  nlohmann::ordered_json residuals = nlohmann::ordered_json::object();
  for (int path : paths(c.path)) {
    Field F;
    Field back;
    forward(c, p, f, path, F);
    check(olct_inverse(F.p, &p, path, c.n_max, &g, &back.p), "inverse transform");
    write_csv(back, out_file(c, std::string("roundtrip_") + path_name(path) + ".csv"));
    double r = 0.0;
    check(olct_field_relative_l2(back.p, f.p, &r), "residual");
    std::cout << "residual roundtrip_" << path_name(path) << ' ' << real(r) << '\n';
    residuals[path_name(path)] = real(r);
  }
  const std::string file = out_file(c, "roundtrip_residual.json");
  std::ofstream out(file);
  out << "{";
  bool first = true;
  for (const auto& [k, v] : residuals.items()) {
    out << (first ? "" : ", ") << '"' << k << "\": " << v.get<std::string>();
    first = false;
  }
  out << "}\n";
  if (!out) throw Failure{3, "write " + file + ": failed"};
  std::cout << "wrote " << file << '\n';
  return 0;
}

int run_verify(RunConfig& c) {
  prepare(c);
  const olct_params p = resolve_params(c);
  const olct_suite_config sc{grid_of(c), c.n_max, c.tol};
  Reports r;
  check(olct_verify(c.signal.c_str(), &p, &sc, &r.p), "verify");
  std::size_t n = 0;
  check(olct_reports_count(r.p, &n), "verify");
  for (std::size_t k = 0; k < n; ++k) {
    olct_report_info info{};
    check(olct_reports_get(r.p, k, &info), "verify");
    std::printf("%-26s %s residual=%.3e tol=%g%s\n", info.identity, info.pass ? "PASS" : "FAIL",
                info.residual, info.tolerance,
                info.required ? "" : " (recorded)");
  }
  const std::string file = out_file(c, "report.json");
  check(olct_reports_write_json(r.p, file.c_str()), "write " + file);
  std::cout << "wrote " << file << '\n';
  int ok = 0;
  check(olct_reports_required_pass(r.p, &ok), "verify");
  return ok ? 0 : 1;
}

int run_bench(RunConfig& c) {
  prepare(c);
  const olct_params p = resolve_params(c);
  const std::string file = out_file(c, "bench.csv");
  std::ofstream csv(file);
  csv << "n_r,n_theta,N,path,seconds\n";
  for (int scale : {4, 2, 1}) {
    RunConfig s = c;
    s.n_r = std::max(2, c.n_r / scale);
    s.n_theta = std::max(2, c.n_theta / scale);
    s.n_theta += s.n_theta % 2;
    s.n_max = std::min(c.n_max, s.n_theta / 2 - 1);
    Field f;
    make_signal(s, f);
    double seconds[2] = {0.0, 0.0};
    for (int path : {OLCT_PATH_DIRECT, OLCT_PATH_HARMONIC}) {
      Field out;
      const auto t0 = std::chrono::steady_clock::now();
      forward(s, p, f, path, out);
      seconds[path] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      csv << s.n_r << ',' << s.n_theta << ',' << s.n_max << ',' << path_name(path) << ','
          << real(seconds[path]) << '\n';
    }
    std::printf("n_r=%d n_theta=%d N=%d direct=%.4fs harmonic=%.4fs speedup=%.1f\n", s.n_r,
                s.n_theta, s.n_max, seconds[0], seconds[1], seconds[0] / seconds[1]);
  }
  csv.close();
  if (!csv) throw Failure{3, "write " + file + ": failed"};
  std::cout << "wrote " << file << '\n';
  return 0;
}

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--params", c.params, "Parameter tuple a,b,c,d,tau,eta");
  sub->add_option("--preset", c.preset, "ft | frft:theta | lct:a,b,c,d | fresnel:b | ofrft:theta,tau,eta");
  sub->add_option("--signal", c.signal, "gaussian:s | vortex:s,k | ring:r0,w,k | angular_cos:s,m | zero");
  sub->add_option("--nr", c.n_r, "Radial Gauss-Legendre nodes");
  sub->add_option("--rmax", c.r_max, "Radial extent of the input grid");
  sub->add_option("--ntheta", c.n_theta, "Angular nodes (even)");
  sub->add_option("--nmax", c.n_max, "Largest harmonic order");
  sub->add_option("--path", c.path, "direct | harmonic | both")
      ->check(CLI::IsMember({"direct", "harmonic", "both"}));
  sub->add_option("--out", c.out, "Output directory");
  sub->add_option("--tol", c.tol, "Tolerance of the two-path and round-trip identities");
  sub->add_option("--threads", c.threads, "Worker threads, 0 for all cores");
  sub->add_option("--config", c.config, "JSON file with the same keys; flags win");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polar offset linear canonical transforms"};
  app.require_subcommand(1);
  RunConfig c;
  struct Command {
    const char* name;
    const char* help;
    int (*run)(RunConfig&);
  };
  const Command commands[] = {
      {"transform", "Transform a built-in signal and write CSV", run_transform},
      {"invert", "Forward and inverse transform, report the round-trip residual", run_invert},
      {"verify", "Run the identity suite and write report.json", run_verify},
      {"bench", "Time the direct and harmonic paths over a grid sweep", run_bench},
  };
  std::vector<CLI::App*> subs;
  for (const auto& cmd : commands) {
    subs.push_back(app.add_subcommand(cmd.name, cmd.help));
    add_common(subs.back(), c);
  }
  CLI11_PARSE(app, argc, argv);

  for (std::size_t k = 0; k < subs.size(); ++k) {
    if (!subs[k]->parsed()) continue;
    try {
      apply_config_file(c, *subs[k]);
      return commands[k].run(c);
    } catch (const Failure& f) {
      std::cerr << "error: " << f.message << '\n';
      return f.exit_code;
    }
  }
  return 2;
}
