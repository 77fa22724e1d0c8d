#pragma once

// JSON surface description consumed by the command-line tool.
//
//   {
//     "schema_version": 1,
//     "ends": [
//       {"type": "funnel", "tau": 1.0, "t0": 0.0, "xi": 0.0,
//        "field": {"kind": "cosh-poly", "coeffs": [0.0, 1.0]}},
//       {"type": "cusp", "L": 1.0, "t0": 0.0, "xi": 0.0,
//        "field": {"kind": "y-poly", "coeffs": [0.0, 1.0]}}
//     ],
//     "numerics": {"grid_n": 64, "t_max": 60.0, "quad_tol": 1e-10,
//                  "delta": 0.35, "bracket_C": 0.0}
//   }

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypspec/model.hpp"

namespace hypspec::cli {

inline constexpr int kSchemaVersion = 1;

struct Numerics {
  std::size_t grid_n = 64;
  double t_max = 60.0;
  double quad_tol = 1e-10;
  double delta = 0.35;
  double bracket_C = 0.0;
};

struct SurfaceConfig {
  int schema_version = kSchemaVersion;
  std::vector<End> ends;  // file order
  Numerics numerics;

  SurfaceEnds surface() const;
};

/// Raised for any malformed or invalid config; the message starts with the
/// path of the offending field, e.g. "ends[1].field.kind: ...".
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

SurfaceConfig parse_config(const std::string& text);
SurfaceConfig load_config(const std::string& path);

/// Canonical single-line JSON; parse_config(serialize(c)) reproduces c.
std::string serialize(const SurfaceConfig& config);

}  // namespace hypspec::cli
