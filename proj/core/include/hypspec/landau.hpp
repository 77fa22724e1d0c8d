#pragma once

// Closed-form Landau-level quantities for constant and slowly varying fields.

#include <vector>

namespace hypspec {

/// Semiclassical state density per unit area below mu in a field of
/// intensity b: b * #{k >= 0 : mu > (2k+1) b} for b > 0, and max(mu, 0)/2
/// for b = 0. Jump points belong to the lower branch. Throws
/// std::domain_error for b < 0.
double landau_count(double mu, double b);

/// Discrete levels (2j+1)|beta| - j(j+1), j < |beta| - 1/2, of the funnel
/// limit operator. Empty when |beta| <= 1/2.
struct LandauLevelSet {
  double beta = 0.0;
  std::vector<double> levels;  // ascending
};

LandauLevelSet landau_level_set(double beta);

/// Bottom 1/4 + beta^2 of the essential spectrum contributed by an end with
/// constant field beta.
double ess_bottom(double beta);

}  // namespace hypspec
