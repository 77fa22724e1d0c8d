#pragma once

// Semiclassical counting: the Landau-level integral
//
//   W(lambda) = (1/2pi) int_M  N(lambda - 1/4, b(m)) dm,
//
// the sublevel area omega(mu), its doubling-type condition, the two-sided
// bracket around W with user constants (delta, C), and log-log exponent fits.
// Only the modeled ends contribute; the compact core is not represented.

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hypspec/model.hpp"

namespace hypspec {

struct WeylOptions {
  double delta = 0.35;     // must lie strictly inside (1/3, 2/5)
  double bracket_C = 0.0;  // non-constructive constant; user supplied
  double quad_tol = 1e-10; // relative tolerance per smooth piece
};

/// Throws std::invalid_argument naming the offending option.
void validate(const WeylOptions& opts);

/// Per-end Landau integral int_{t0}^inf N(mu, b(t)) rho(t) dt (the angular
/// integral and the 1/2pi cancel). The integrand jumps where
/// b(t) = mu/(2k+1); those points are located by root finding and every
/// smooth piece is integrated adaptively.
double landau_integral(const End& end, double mu, double quad_tol = 1e-10);

/// Sum over ends (funnels first, then cusps, in order) of
/// landau_integral(end, lambda - 1/4). Throws std::domain_error if any field
/// is bounded.
double weyl_integral(const SurfaceEnds& ends, double lambda, const WeylOptions& opts = {});

/// Area of {m : b(m) < mu} over the modeled ends.
double omega(const End& end, double mu);
double omega(const SurfaceEnds& ends, double mu);

struct HypWReport {
  bool holds = false;
  double c1_witness = 0.0;
  std::size_t evaluated = 0;
  std::vector<std::string> notes;  // skipped (mu, tau) entries
};

/// Evaluates (omega((1+tau) mu) - omega(mu)) / (tau omega(mu)) over the grid.
/// Holds when every ratio is finite and the largest one is <= c1_max.
HypWReport check_hypW(const SurfaceEnds& ends, std::span<const double> mu_grid,
                      std::span<const double> tau_grid, double c1_max = 1e3);

struct Bracket {
  double lower = 0.0;
  double upper = 0.0;
};

/// Both sides of the two-sided estimate: weights 1 -/+ C (b+1)^{-(2-5 delta)/2}
/// (the lower weight clamped at 0) and arguments
/// lambda (1 -/+ C lambda^{1 - 3 delta}) - 1/4.
Bracket theorem1_bracket(const SurfaceEnds& ends, double lambda, const WeylOptions& opts);

struct ExponentFit {
  double alpha = 0.0;  // exp(intercept)
  double slope = 0.0;
};

/// Least-squares line through (ln lambda, ln count).
ExponentFit fit_exponent(std::span<const std::pair<double, double>> samples);

}  // namespace hypspec
