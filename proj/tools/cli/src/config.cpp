#include "hypspec/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace hypspec::cli {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

void reject_unknown(const json& obj, const std::string& path, const std::set<std::string>& known) {
  for (const auto& [key, value] : obj.items()) {
    if (!known.count(key)) fail(path.empty() ? key : path + "." + key, "unknown key");
  }
}

const json& member(const json& obj, const std::string& key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path, "missing required key");
  return *it;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(path, "must be finite");
  return x;
}

double number_or(const json& obj, const std::string& key, const std::string& path, double fallback) {
  const auto it = obj.find(key);
  return it == obj.end() ? fallback : number(*it, path);
}

RadialField parse_field(const json& v, const std::string& path, const std::string& expected_kind) {
  if (!v.is_object()) fail(path, "expected an object");
  reject_unknown(v, path, {"kind", "coeffs"});
  const json& kind = member(v, "kind", path + ".kind");
  if (!kind.is_string()) fail(path + ".kind", "expected a string");
  const auto name = kind.get<std::string>();
  if (name != "cosh-poly" && name != "y-poly") fail(path + ".kind", "must be \"cosh-poly\" or \"y-poly\"");
  if (name != expected_kind) fail(path + ".kind", "\"" + name + "\" does not match the end type");

  const json& coeffs = member(v, "coeffs", path + ".coeffs");
  if (!coeffs.is_array() || coeffs.empty()) fail(path + ".coeffs", "expected a nonempty array");
  std::vector<double> c;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    c.push_back(number(coeffs[i], path + ".coeffs[" + std::to_string(i) + "]"));
  }
  return RadialField(name == "cosh-poly" ? FieldKind::funnel_cosh_poly : FieldKind::cusp_y_poly,
                     std::move(c));
}

End parse_end(const json& v, const std::string& path) {
  if (!v.is_object()) fail(path, "expected an object");
  const json& type = member(v, "type", path + ".type");
  if (!type.is_string()) fail(path + ".type", "expected a string");
  const auto name = type.get<std::string>();
  if (name == "funnel") {
    reject_unknown(v, path, {"type", "tau", "t0", "xi", "field"});
    FunnelEnd f;
    f.tau = number(member(v, "tau", path + ".tau"), path + ".tau");
    if (!(f.tau > 0.0)) fail(path + ".tau", "must be > 0");
    f.t0 = number_or(v, "t0", path + ".t0", 0.0);
    if (!(f.t0 >= 0.0)) fail(path + ".t0", "must be >= 0 for a funnel");
    f.xi = number_or(v, "xi", path + ".xi", 0.0);
    f.field = parse_field(member(v, "field", path + ".field"), path + ".field", "cosh-poly");
    return f;
  }
  if (name == "cusp") {
    reject_unknown(v, path, {"type", "L", "t0", "xi", "field"});
    CuspEnd c;
    c.L = number(member(v, "L", path + ".L"), path + ".L");
    if (!(c.L > 0.0)) fail(path + ".L", "must be > 0");
    c.t0 = number_or(v, "t0", path + ".t0", 0.0);
    c.xi = number_or(v, "xi", path + ".xi", 0.0);
    c.field = parse_field(member(v, "field", path + ".field"), path + ".field", "y-poly");
    return c;
  }
  fail(path + ".type", "must be \"funnel\" or \"cusp\"");
}

Numerics parse_numerics(const json& v) {
  const std::string path = "numerics";
  if (!v.is_object()) fail(path, "expected an object");
  reject_unknown(v, path, {"grid_n", "t_max", "quad_tol", "delta", "bracket_C"});
  Numerics n;
  if (const auto it = v.find("grid_n"); it != v.end()) {
    if (!it->is_number_integer() || it->get<long long>() < 2) fail(path + ".grid_n", "expected an integer >= 2");
    n.grid_n = it->get<std::size_t>();
  }
  n.t_max = number_or(v, "t_max", path + ".t_max", n.t_max);
  if (!(n.t_max > 0.0)) fail(path + ".t_max", "must be > 0");
  n.quad_tol = number_or(v, "quad_tol", path + ".quad_tol", n.quad_tol);
  if (!(n.quad_tol > 0.0)) fail(path + ".quad_tol", "must be > 0");
  n.delta = number_or(v, "delta", path + ".delta", n.delta);
  if (!(n.delta > 1.0 / 3.0 && n.delta < 0.4)) fail(path + ".delta", "must lie strictly inside (1/3, 2/5)");
  n.bracket_C = number_or(v, "bracket_C", path + ".bracket_C", n.bracket_C);
  if (!(n.bracket_C >= 0.0)) fail(path + ".bracket_C", "must be >= 0");
  return n;
}

ordered_json field_json(const RadialField& field) {
  ordered_json f;
  f["kind"] = field.kind() == FieldKind::funnel_cosh_poly ? "cosh-poly" : "y-poly";
  f["coeffs"] = std::vector<double>(field.coeffs().begin(), field.coeffs().end());
  return f;
}

}  // namespace

SurfaceEnds SurfaceConfig::surface() const {
  SurfaceEnds s;
  for (const auto& e : ends) {
    if (const auto* f = std::get_if<FunnelEnd>(&e)) s.funnels.push_back(*f);
    else s.cusps.push_back(std::get<CuspEnd>(e));
  }
  return s;
}

SurfaceConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail("config", std::string("invalid JSON (") + e.what() + ")");
  }
  if (!doc.is_object()) fail("config", "top level must be an object");
  reject_unknown(doc, "", {"schema_version", "ends", "numerics"});

  SurfaceConfig cfg;
  const json& version = member(doc, "schema_version", "schema_version");
  if (!version.is_number_integer()) fail("schema_version", "expected an integer");
  cfg.schema_version = version.get<int>();
  if (cfg.schema_version != kSchemaVersion) {
    fail("schema_version", "unsupported version " + std::to_string(cfg.schema_version));
  }

  const json& ends = member(doc, "ends", "ends");
  if (!ends.is_array() || ends.empty()) fail("ends", "expected a nonempty array");
  for (std::size_t i = 0; i < ends.size(); ++i) {
    cfg.ends.push_back(parse_end(ends[i], "ends[" + std::to_string(i) + "]"));
  }
  if (const auto it = doc.find("numerics"); it != doc.end()) cfg.numerics = parse_numerics(*it);
  return cfg;
}

SurfaceConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config: cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string serialize(const SurfaceConfig& config) {
  ordered_json doc;
  doc["schema_version"] = config.schema_version;
  doc["ends"] = ordered_json::array();
  for (const auto& e : config.ends) {
    ordered_json j;
    if (const auto* f = std::get_if<FunnelEnd>(&e)) {
      j["type"] = "funnel";
      j["tau"] = f->tau;
      j["t0"] = f->t0;
      j["xi"] = f->xi;
      j["field"] = field_json(f->field);
    } else {
      const auto& c = std::get<CuspEnd>(e);
      j["type"] = "cusp";
      j["L"] = c.L;
      j["t0"] = c.t0;
      j["xi"] = c.xi;
      j["field"] = field_json(c.field);
    }
    doc["ends"].push_back(std::move(j));
  }
  const Numerics& n = config.numerics;
  doc["numerics"] = {{"grid_n", n.grid_n},
                     {"t_max", n.t_max},
                     {"quad_tol", n.quad_tol},
                     {"delta", n.delta},
                     {"bracket_C", n.bracket_C}};
  return doc.dump();
}

}  // namespace hypspec::cli
