#include "hypspec/landau.hpp"

#include <cmath>
#include <stdexcept>

namespace hypspec {

double landau_count(double mu, double b) {
  if (!(b >= 0.0)) throw std::domain_error("b: intensity must be >= 0");
  if (mu <= 0.0) return 0.0;
  if (b == 0.0) return 0.5 * mu;
  // Number of k >= 0 with (2k+1) b < mu; the floating estimate is corrected
  // against the defining inequality.
  double levels = std::floor(0.5 * (mu / b - 1.0)) + 1.0;
  if (levels < 0.0) levels = 0.0;
  while (levels > 0.0 && (2.0 * (levels - 1.0) + 1.0) * b >= mu) levels -= 1.0;
  while ((2.0 * levels + 1.0) * b < mu) levels += 1.0;
  return b * levels;
}

LandauLevelSet landau_level_set(double beta) {
  LandauLevelSet set;
  set.beta = beta;
  const double a = std::abs(beta);
  for (int j = 0; j < a - 0.5; ++j) {
    set.levels.push_back((2.0 * j + 1.0) * a - j * (j + 1.0));
  }
  return set;
}

double ess_bottom(double beta) { return 0.25 + beta * beta; }

}  // namespace hypspec
