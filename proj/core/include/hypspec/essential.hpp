#pragma once

// Essential spectrum of the magnetic Laplacian when every end carries a
// constant field, and numerical checks of the funnel limit spectrum.

#include <optional>
#include <vector>

#include "hypspec/model.hpp"

namespace hypspec {

/// Union of a closed half-line [bottom, inf) and isolated points below it.
struct SpectrumSet {
  std::optional<double> half_line_bottom;
  std::vector<double> points;  // ascending, deduplicated, all < bottom

  bool empty() const { return !half_line_bottom && points.empty(); }
};

/// Limit of the circulation of A around the cusp's closed horocycles,
/// 2 pi lim_{t->inf} a(t) = 2 pi (xi - L b e^{-t0}) for a constant field b.
/// Throws std::domain_error for a non-constant field.
double holonomy(const CuspEnd& end);

/// Whether the holonomy lies in 2 pi Z (up to 1e-9 in units of 2 pi).
bool has_integral_holonomy(const CuspEnd& end);

/// Essential spectrum assembled from the ends. Funnels contribute
/// [1/4 + beta^2, inf) and the levels of landau_level_set(beta); cusps with
/// integral holonomy contribute [1/4 + b^2, inf); other cusps contribute
/// nothing. Levels inside the half-line are absorbed.
/// Throws std::domain_error if any field is non-constant.
SpectrumSet essential_spectrum(const SurfaceEnds& ends);

struct MorseOptions {
  double s_lo = -20.0;
  double s_hi = 4.0;
  std::size_t n = 8000;
  double margin = 0.05;        // eigenvalues below 1/4 + beta^2 - margin are kept
  double eig_tol = 1e-12;
  double window_tol = 1e-6;    // allowed drift of the lowest level on a doubled window
};

struct MorseReport {
  double beta = 0.0;
  std::vector<double> predicted;
  std::vector<double> computed;
  double max_abs_err = 0.0;  // infinite when the level counts differ
  bool converged = true;
};

/// Discrete spectrum of the Morse operator -d^2/ds^2 + 1/4 + (|beta| - e^s)^2
/// on [s_lo, s_hi] against the closed-form levels.
MorseReport morse_check(double beta, const MorseOptions& opts = {});

struct ModeLimitOptions {
  double t0 = 0.0;          // funnel boundary; the wall sits at s = ln(2 rho) - t0
  double s_lo = -30.0;
  double step = 0.002;      // target grid spacing in s
  double eig_tol = 1e-12;
  double refine_tol = 1e-4; // allowed change of the eigenvalue when h halves
};

struct ModeLimitReport {
  double beta = 0.0;
  double limit = 0.0;  // min of the levels and 1/4 + beta^2
  std::vector<double> rho;
  std::vector<double> lowest;
  std::vector<double> distance;
  std::vector<double> refinement;  // |change of the eigenvalue when h halves|
  bool converged = true;
};

/// Lowest Dirichlet eigenvalue of the constant-field funnel mode with
/// rho = |ell - xi| / tau, for each rho, written in s = ln(2 rho) - t.
ModeLimitReport funnel_mode_limit_check(double beta, const std::vector<double>& rho_list,
                                        const ModeLimitOptions& opts = {});

}  // namespace hypspec
