#include "olct/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <string_view>

#include "olct/error.hpp"

namespace olct {
namespace {

double real_number(const Json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_number()) {
    throw Error(ErrorCode::parse, std::string("params: missing numeric key \"") + key + "\"");
  }
  return it->get<double>();
}

void write_string(std::string& out, std::string_view s) {
  out += Json(std::string(s)).dump();
}

void write(std::string& out, const Json& j, int indent, int depth) {
  const auto newline = [&](int level) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * level), ' ');
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        write_string(out, key);
        out += indent < 0 ? ":" : ": ";
        write(out, value, indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& v) {
        return v.is_primitive();
      });
      out += '[';
      bool first = true;
      for (const auto& value : j) {
        if (!first) out += flat && indent >= 0 ? ", " : ",";
        first = false;
        if (!flat) newline(depth + 1);
        write(out, value, flat ? -1 : indent, depth + 1);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_real(v) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

Json to_json(const OlctParams& p) {
  return Json{{"a", p.a}, {"b", p.b}, {"c", p.c}, {"d", p.d}, {"tau", p.tau}, {"eta", p.eta}};
}

OlctParams params_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::parse, "params: expected a JSON object");
  return make_params(real_number(j, "a"), real_number(j, "b"), real_number(j, "c"),
                     real_number(j, "d"), real_number(j, "tau"), real_number(j, "eta"));
}

Json to_json(const HarmonicSpectrum& s, const OlctParams& p) {
  Json nodes = Json::array();
  for (double r : s.rgrid().nodes()) nodes.push_back(r);
  Json profiles = Json::object();
  for (int n = -s.n_max(); n <= s.n_max(); ++n) {
    Json values = Json::array();
    for (const Complex& v : s.profile(n)) values.push_back(Json::array({v.real(), v.imag()}));
    profiles[std::to_string(n)] = std::move(values);
  }
  return Json{{"params", to_json(p)},
              {"n_max", s.n_max()},
              {"r_max", s.rgrid().r_max()},
              {"r_nodes", std::move(nodes)},
              {"profiles", std::move(profiles)}};
}

Json to_json(const VerificationReport& r) {
  Json per_order = Json::object();
  for (const auto& [n, v] : r.per_order) per_order[std::to_string(n)] = v;
  Json details = Json::object();
  for (const auto& [k, v] : r.details) details[k] = v;
  return Json{{"identity", r.identity},
              {"signal", r.signal},
              {"grid", r.grid},
              {"params", to_json(r.params)},
              {"residual", r.residual},
              {"tolerance", r.tolerance},
              {"pass", r.pass},
              {"required", r.required},
              {"per_order", std::move(per_order)},
              {"details", std::move(details)}};
}

Json to_json(std::span<const VerificationReport> reports) {
  Json out = Json::array();
  for (const auto& r : reports) out.push_back(to_json(r));
  return out;
}

std::string dump(const Json& j, int indent) {
  std::string out;
  write(out, j, indent, 0);
  return out;
}

}  // namespace olct
