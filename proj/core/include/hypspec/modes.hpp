#pragma once

// Fourier-mode reduction of the magnetic Laplacian on a radial end.
//
// With A = a(t) dtheta and u = e^{i ell theta} f(t) / sqrt(rho(t)), the
// Dirichlet operator on an end splits into the 1-D operators
//
//   P_ell = -d^2/dt^2 + V_ell(t),
//   V_ell(t) = (ell - a(t))^2 g(t)^2 + Q(t),
//
// where g = 1/|d_theta| (1/(tau cosh t) on funnels, e^t/L on cusps) and
// Q = (sqrt rho)''/sqrt rho ((1 + sech^2 t)/4 on funnels, 1/4 on cusps).
// The end's counting function is the sum over ell of the mode counts.

#include <cstdint>

#include "hypspec/model.hpp"
#include "hypspec/sturm1d.hpp"

namespace hypspec {

struct ModePotential {
  std::int64_t ell = 0;
  Potential potential;
  double floor = 0.25;  // proven lower bound of the potential
  double t_lo = 0.0;    // left end of the domain (may be -inf)
};

ModePotential funnel_mode_potential(const FunnelEnd& end, std::int64_t ell);
ModePotential cusp_mode_potential(const CuspEnd& end, std::int64_t ell);
ModePotential mode_potential(const End& end, std::int64_t ell);

/// Large-|ell| limit of a constant-field funnel mode, written in the log
/// coordinate s = ln y of the paper's y = 2 rho e^{-t}: the Morse potential
/// 1/4 + (|beta| - e^s)^2 on the whole line. The weighted operator
/// D_y (y^2 D_y) + (beta - y)^2 on L^2(dy) is unitarily equivalent to
/// -d^2/ds^2 + 1/4 + (beta - e^s)^2 via f(y) = y^{-1/2} g(ln y).
ModePotential funnel_limit_potential(double beta);

struct ModeOptions {
  std::size_t n0 = 64;               // smallest coarse grid per mode
  double wavelength_fraction = 0.2;  // coarse grid satisfies sqrt(lambda) h <= this
  int max_refinements = 10;
  int stable_refinements = 2;
  double tunnel_action = 30.0;       // WKB action kept beyond the allowed region
  double t_max = 60.0;               // no truncation point beyond t0 + t_max
  unsigned threads = 0;              // 0: hardware concurrency
};

/// Modes that can carry eigenvalues below lambda. Every mode outside the
/// interval has a spectral floor above lambda, certified on a safeguard grid
/// from P_ell >= eps V_ell + (1 - eps) s b~ (0 < eps < 1, s the sign of the
/// leading field coefficient). Scanning outward from the mode whose zero of
/// ell - a(t) sits at the weakest field stops after three consecutive
/// excluded modes. Empty for lambda <= 1/4.
/// Throws std::domain_error for a bounded field.
ModeInterval mode_range(const End& end, double lambda, const ModeOptions& opts = {});

/// Dirichlet eigenvalue count N(lambda) of the end, summed over mode_range.
CountResult count_end(const End& end, double lambda, const ModeOptions& opts = {});

}  // namespace hypspec
