#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hypspec/cli/config.hpp"
#include "hypspec/cli/run.hpp"

using namespace hypspec;
using namespace hypspec::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("hypspec_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

const char* kTwoFunnels = R"({"schema_version":1,"ends":[
  {"type":"funnel","tau":1,"t0":0,"xi":0,"field":{"kind":"cosh-poly","coeffs":[1]}},
  {"type":"funnel","tau":2,"t0":0,"xi":0,"field":{"kind":"cosh-poly","coeffs":[3]}}]})";

const char* kCusp = R"({"schema_version":1,"ends":[
  {"type":"cusp","L":1,"t0":0,"xi":0,"field":{"kind":"y-poly","coeffs":[0,1]}}]})";

const char* kMixed = R"({"schema_version":1,"ends":[
  {"type":"funnel","tau":1.5,"t0":0.25,"xi":0.3,"field":{"kind":"cosh-poly","coeffs":[0.5,1]}},
  {"type":"cusp","L":0.75,"t0":-1,"xi":0.1,"field":{"kind":"y-poly","coeffs":[1,0,2]}}],
  "numerics":{"grid_n":128,"t_max":40,"quad_tol":1e-9,"delta":0.36,"bracket_C":0.5}})";

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("format_double is shortest round-trip") {
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1e-10) == "1e-10");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("closed-form subcommands") {
  CHECK(call({"nlandau", "--mu", "5", "--b", "1"}).out == "2\n");
  CHECK(call({"sset", "--beta", "2.5"}).out == "[2.5,5.5]\n");
  CHECK(call({"sset", "--beta", "0.4"}).out == "[]\n");
}

TEST_CASE("essential subcommand") {
  const auto path = write_temp("two_funnels.json", kTwoFunnels);
  const auto r = call({"essential", "--config", path});
  CHECK(r.code == kOk);
  CHECK(r.out == "{\"bottom\":1.25,\"points\":[1.0],\"empty\":false}\n");
}

TEST_CASE("config round trip") {
  const auto a = parse_config(kMixed);
  const auto text = serialize(a);
  const auto b = parse_config(text);
  CHECK(serialize(b) == text);
  CHECK(text.find('\n') == std::string::npos);
  CHECK(b.numerics.grid_n == 128);
  CHECK(b.numerics.delta == 0.36);
  REQUIRE(b.ends.size() == 2);
  CHECK(std::get<CuspEnd>(b.ends[1]).L == 0.75);
  CHECK(b.surface().funnels.size() == 1);

  const auto d = parse_config(kCusp);
  CHECK(d.numerics.grid_n == Numerics{}.grid_n);
  CHECK(parse_config(serialize(d)).numerics.quad_tol == Numerics{}.quad_tol);
}

TEST_CASE("config errors name the field") {
  CHECK(error_of("{").rfind("config", 0) == 0);
  CHECK(error_of(R"({"ends":[]})").rfind("schema_version", 0) == 0);
  CHECK(error_of(R"({"schema_version":2,"ends":[]})").rfind("schema_version", 0) == 0);
  CHECK(error_of(R"({"schema_version":1,"ends":[]})").rfind("ends", 0) == 0);
  CHECK(error_of(R"({"schema_version":1,"ends":[{"type":"disk"}]})").rfind("ends[0].type", 0) == 0);
  CHECK(error_of(R"({"schema_version":1,"ends":[{"type":"cusp","L":-1,"field":{"kind":"y-poly","coeffs":[1]}}]})")
            .rfind("ends[0].L", 0) == 0);
  CHECK(error_of(R"({"schema_version":1,"ends":[{"type":"cusp","L":1,"field":{"kind":"cosh-poly","coeffs":[1]}}]})")
            .rfind("ends[0].field.kind", 0) == 0);
  CHECK(error_of(R"({"schema_version":1,"ends":[{"type":"funnel","tau":1,"field":{"kind":"cosh-poly","coeffs":[1,"x"]}}]})")
            .rfind("ends[0].field.coeffs[1]", 0) == 0);
  CHECK(error_of(R"({"schema_version":1,"ends":[{"type":"funnel","tau":1,"t0":-1,"field":{"kind":"cosh-poly","coeffs":[1]}}]})")
            .rfind("ends[0].t0", 0) == 0);
  CHECK(error_of(R"({"schema_version":1,"ends":[{"type":"funnel","tau":1,"field":{"kind":"cosh-poly","coeffs":[1]}}],"numerics":{"delta":0.5}})")
            .rfind("numerics.delta", 0) == 0);
  CHECK(error_of(R"({"schema_version":1,"ends":[{"type":"funnel","tau":1,"colour":2,"field":{"kind":"cosh-poly","coeffs":[1]}}]})")
            .rfind("ends[0].colour", 0) == 0);
}

TEST_CASE("flag and config errors exit with 1") {
  auto r = call({"nlandau", "--mu", "5"});
  CHECK(r.code == kInvalid);
  CHECK(r.err.find("--b") != std::string::npos);

  r = call({"nlandau", "--mu", "5", "--b", "-1"});
  CHECK(r.code == kInvalid);
  CHECK(r.err.find("b:") != std::string::npos);

  r = call({"essential", "--config", "/nonexistent/hypspec.json"});
  CHECK(r.code == kInvalid);
  CHECK(r.err.find("--config") != std::string::npos);

  const auto bounded = write_temp("bounded.json", kTwoFunnels);
  r = call({"count-end", "--config", bounded, "--end", "0", "--lambda", "5"});
  CHECK(r.code == kInvalid);
  CHECK(r.err.find("mode sum diverges") != std::string::npos);

  const auto cusp = write_temp("cusp.json", kCusp);
  r = call({"count-end", "--config", cusp, "--end", "3", "--lambda", "5"});
  CHECK(r.code == kInvalid);
  CHECK(r.err.find("--end") != std::string::npos);

  r = call({"fit", "--config", cusp});
  CHECK(r.code == kInvalid);

  r = call({"morse-check", "--beta", "2.5", "--window", "3,1"});
  CHECK(r.code == kInvalid);
  CHECK(r.err.find("--window") != std::string::npos);

  CHECK(call({}).code == kInvalid);
  CHECK(call({"--help"}).code == kOk);
}

TEST_CASE("count-end output") {
  const auto path = write_temp("cusp_count.json", kCusp);
  const auto r = call({"count-end", "--config", path, "--end", "0", "--lambda", "100", "--json"});
  CHECK(r.code == kOk);
  CHECK(r.out.rfind("{\"count\":", 0) == 0);
  CHECK(r.out.find("\"converged\":true") != std::string::npos);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 1);

  const auto text = call({"count-end", "--config", path, "--end", "0", "--lambda", "100"});
  CHECK(text.out.find("converged=true") != std::string::npos);
}

TEST_CASE("non-converged numerics exit with 2") {
  const auto path = write_temp("short.json", R"({"schema_version":1,"ends":[
    {"type":"cusp","L":1,"t0":0,"xi":0,"field":{"kind":"y-poly","coeffs":[0,1]}}],
    "numerics":{"t_max":0.5}})");
  const auto r = call({"count-end", "--config", path, "--end", "0", "--lambda", "400", "--json"});
  CHECK(r.code == kNotConverged);
  CHECK(r.out.find("\"converged\":false") != std::string::npos);
}

TEST_CASE("compare writes a deterministic CSV") {
  const auto path = write_temp("mixed.json", kMixed);
  const auto csv = (std::filesystem::temp_directory_path() / "hypspec_test_compare.csv").string();
  const auto r = call({"compare", "--config", path, "--lambdas", "20,40", "--out", csv});
  CHECK(r.code == kOk);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "lambda,count,weyl,lower,upper,ratio,converged\r");
  std::string row;
  int rows = 0;
  while (std::getline(in, row)) {
    ++rows;
    CHECK(std::count(row.begin(), row.end(), ',') == 6);
  }
  CHECK(rows == 2);

  const auto a = call({"compare", "--config", path, "--lambdas", "20,40"});
  const auto b = call({"compare", "--config", path, "--lambdas", "20,40"});
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("lambda,count,weyl,lower,upper,ratio,converged\r\n20,", 0) == 0);
}

TEST_CASE("fit, weyl, holonomy, hypcheck, morse-check") {
  const auto cusp = write_temp("cusp_fit.json", kCusp);
  auto r = call({"fit", "--config", cusp, "--lambda-geom", "50,2,3"});
  CHECK(r.code == kOk);
  CHECK(r.out.rfind("{\"slope\":", 0) == 0);
  CHECK(r.out == call({"fit", "--config", cusp, "--lambdas", "50,100,200"}).out);

  r = call({"weyl", "--config", cusp, "--lambda", "0.2"});
  CHECK(r.out == "0\n");

  const auto holo = write_temp("holo.json", R"({"schema_version":1,"ends":[
    {"type":"cusp","L":1,"t0":0,"xi":2.5,"field":{"kind":"y-poly","coeffs":[2]}}]})");
  r = call({"holonomy", "--config", holo, "--end", "0"});
  CHECK(r.code == kOk);
  CHECK(r.out.find("\"integral\":false") != std::string::npos);

  r = call({"hypcheck", "--config", cusp});
  CHECK(r.code == kOk);
  CHECK(r.out.find("\"h0\":true") != std::string::npos);
  CHECK(r.out.find("\"hypW\":{\"holds\":true") != std::string::npos);

  r = call({"morse-check", "--beta", "2.5", "--grid", "4000", "--window", "-20,4"});
  CHECK(r.code == kOk);
  CHECK(r.out.rfind("{\"beta\":2.5,\"predicted\":[2.5,5.5]", 0) == 0);
}

}  // TEST_SUITE
