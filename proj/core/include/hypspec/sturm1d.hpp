#pragma once

// Finite-difference Dirichlet realizations of 1-D Schrodinger operators
// -d^2/dt^2 + V(t) and eigenvalue counting by Sturm-sequence inertia.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace hypspec {

using Potential = std::function<double(double)>;

/// Symmetric tridiagonal matrix. For a discretized operator the diagonal is
/// 2/h^2 + V(t_i) and every off-diagonal entry is -1/h^2 on the interior grid
/// t_i = t_lo + i h, i = 1..n, h = (t_hi - t_lo)/(n + 1).
class TridiagonalOperator {
 public:
  TridiagonalOperator(std::vector<double> diag, std::vector<double> off,
                      double t_lo = 0.0, double t_hi = 0.0);

  std::size_t size() const { return diag_.size(); }
  const std::vector<double>& diag() const { return diag_; }
  const std::vector<double>& off() const { return off_; }
  double t_lo() const { return t_lo_; }
  double t_hi() const { return t_hi_; }
  double step() const { return (t_hi_ - t_lo_) / static_cast<double>(size() + 1); }

  /// Interval containing every eigenvalue.
  std::pair<double, double> gershgorin_bounds() const;
  double trace() const;

 private:
  std::vector<double> diag_;
  std::vector<double> off_;
  double t_lo_;
  double t_hi_;
};

/// Three-point discretization with Dirichlet walls at t_lo and t_hi.
/// Throws std::invalid_argument for n < 2, t_lo >= t_hi, or a non-finite
/// potential sample (the message names the grid point).
TridiagonalOperator discretize(const Potential& V, double t_lo, double t_hi, std::size_t n);

/// Number of eigenvalues strictly below lambda (negative pivots of the
/// LDL^T factorization of T - lambda I). A zero pivot is replaced by a tiny
/// positive value so that an eigenvalue exactly at lambda is not counted.
std::size_t count_below(const TridiagonalOperator& T, double lambda);

/// The k smallest eigenvalues, each bisected to an interval of width <= tol.
/// Throws std::invalid_argument if k > n or tol <= 0.
std::vector<double> lowest_eigenvalues(const TridiagonalOperator& T, std::size_t k, double tol);

struct ModeInterval {
  std::int64_t lo = 0;
  std::int64_t hi = -1;

  bool empty() const { return lo > hi; }
  std::int64_t size() const { return empty() ? 0 : hi - lo + 1; }
};

struct CountResult {
  std::size_t count = 0;
  double lambda = 0.0;
  std::size_t n = 0;       // finest grid used
  double t_hi = 0.0;       // truncation point
  ModeInterval mode_range; // filled by mode summation
  bool converged = false;
};

struct StableCountOptions {
  std::size_t n0 = 64;
  double t_hi0 = 10.0;
  int max_refinements = 10;
  int stable_refinements = 2;  // successive refinements with an unchanged count
  int max_extensions = 30;
  double tail_factor = 2.0;    // truncate where V >= tail_factor * lambda
};

/// Count of Dirichlet eigenvalues of -d^2 + V on (t_lo, inf) below lambda.
/// The truncation point is pushed out until V >= tail_factor * lambda on the
/// tail, then the grid is doubled until the count is unchanged over
/// `stable_refinements` successive refinements. A count that does not settle
/// is returned with converged = false.
CountResult count_stable(const Potential& V, double t_lo, double lambda,
                         const StableCountOptions& opts = {});

}  // namespace hypspec
