#include "hypspec/sturm1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

namespace hypspec {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// One step of the LDL^T pivot recursion for T - lambda I. Returns the new
// pivot; zero pivots are nudged upward so that they count as nonnegative.
inline double next_pivot(double shifted_diag, double off_sq, double prev) {
  double d = prev == 0.0 ? shifted_diag : shifted_diag - off_sq / prev;
  if (d == 0.0) d = kEps * (std::abs(shifted_diag) + off_sq + 1.0);
  return d;
}

std::string describe_sample(double t, double v) {
  std::ostringstream os;
  os.precision(17);
  os << "potential is not finite at grid point t=" << t << " (V=" << v << ")";
  return os.str();
}

// discretize + count_below without materializing the matrix.
std::size_t count_on_grid(const Potential& V, double t_lo, double t_hi, std::size_t n,
                          double lambda) {
  const double h = (t_hi - t_lo) / static_cast<double>(n + 1);
  const double inv_h2 = 1.0 / (h * h);
  const double off_sq = inv_h2 * inv_h2;
  std::size_t negative = 0;
  double d = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    const double t = t_lo + static_cast<double>(i) * h;
    const double v = V(t);
    if (!std::isfinite(v)) throw std::invalid_argument(describe_sample(t, v));
    d = next_pivot(2.0 * inv_h2 + v - lambda, i == 1 ? 0.0 : off_sq, d);
    if (d < 0.0) ++negative;
  }
  return negative;
}

}  // namespace

TridiagonalOperator::TridiagonalOperator(std::vector<double> diag, std::vector<double> off,
                                         double t_lo, double t_hi)
    : diag_(std::move(diag)), off_(std::move(off)), t_lo_(t_lo), t_hi_(t_hi) {
  if (diag_.empty()) throw std::invalid_argument("diag: must be nonempty");
  if (off_.size() + 1 != diag_.size()) {
    throw std::invalid_argument("off: must have exactly size(diag) - 1 entries");
  }
}

std::pair<double, double> TridiagonalOperator::gershgorin_bounds() const {
  const std::size_t n = size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(off_[i - 1]);
    if (i + 1 < n) radius += std::abs(off_[i]);
    lo = std::min(lo, diag_[i] - radius);
    hi = std::max(hi, diag_[i] + radius);
  }
  return {lo, hi};
}

double TridiagonalOperator::trace() const {
  double s = 0.0;
  for (double d : diag_) s += d;
  return s;
}

TridiagonalOperator discretize(const Potential& V, double t_lo, double t_hi, std::size_t n) {
  if (n < 2) throw std::invalid_argument("n: grid needs at least 2 interior points");
  if (!(t_lo < t_hi)) throw std::invalid_argument("t_lo/t_hi: require t_lo < t_hi");
  const double h = (t_hi - t_lo) / static_cast<double>(n + 1);
  const double inv_h2 = 1.0 / (h * h);
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = t_lo + static_cast<double>(i + 1) * h;
    const double v = V(t);
    if (!std::isfinite(v)) throw std::invalid_argument(describe_sample(t, v));
    diag[i] = 2.0 * inv_h2 + v;
  }
  return TridiagonalOperator(std::move(diag), std::vector<double>(n - 1, -inv_h2), t_lo, t_hi);
}

std::size_t count_below(const TridiagonalOperator& T, double lambda) {
  const auto& a = T.diag();
  const auto& c = T.off();
  std::size_t negative = 0;
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = next_pivot(a[i] - lambda, i == 0 ? 0.0 : c[i - 1] * c[i - 1], d);
    if (d < 0.0) ++negative;
  }
  return negative;
}

std::vector<double> lowest_eigenvalues(const TridiagonalOperator& T, std::size_t k, double tol) {
  if (k > T.size()) throw std::invalid_argument("k: exceeds the matrix size");
  if (!(tol > 0.0)) throw std::invalid_argument("tol: must be > 0");
  auto [glo, ghi] = T.gershgorin_bounds();
  const double pad = kEps * std::max({1.0, std::abs(glo), std::abs(ghi)}) * 4.0;
  glo -= pad;
  ghi += pad;

  std::vector<double> eigs;
  eigs.reserve(k);
  double floor = glo;
  for (std::size_t j = 0; j < k; ++j) {
    // Invariant: count_below(lo) <= j < count_below(hi).
    double lo = floor;
    double hi = ghi;
    while (hi - lo > tol) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (count_below(T, mid) > j ? hi : lo) = mid;
    }
    eigs.push_back(0.5 * (lo + hi));
    floor = lo;
  }
  return eigs;
}

CountResult count_stable(const Potential& V, double t_lo, double lambda,
                         const StableCountOptions& opts) {
  if (!(opts.t_hi0 > t_lo)) throw std::invalid_argument("t_hi0: must exceed t_lo");
  if (opts.n0 < 2) throw std::invalid_argument("n0: grid needs at least 2 interior points");

  const double wall = lambda + (opts.tail_factor - 1.0) * std::max(std::abs(lambda), 1.0);
  auto tail_holds = [&](double t_hi) {
    const double len = t_hi - t_lo;
    for (int k = 0; k < 4; ++k) {
      if (!(V(t_hi - 0.02 * k * len) >= wall)) return false;
    }
    return true;
  };

  CountResult result;
  result.lambda = lambda;
  double t_hi = opts.t_hi0;
  bool tail_ok = tail_holds(t_hi);
  for (int ext = 0; !tail_ok && ext < opts.max_extensions; ++ext) {
    t_hi = t_lo + 2.0 * (t_hi - t_lo);
    tail_ok = tail_holds(t_hi);
  }
  result.t_hi = t_hi;

  std::size_t n = opts.n0;
  std::size_t count = count_on_grid(V, t_lo, t_hi, n, lambda);
  int unchanged = 0;
  for (int r = 0; r < opts.max_refinements && unchanged < opts.stable_refinements; ++r) {
    n *= 2;
    const std::size_t refined = count_on_grid(V, t_lo, t_hi, n, lambda);
    unchanged = refined == count ? unchanged + 1 : 0;
    count = refined;
  }
  result.count = count;
  result.n = n;
  result.converged = tail_ok && unchanged >= opts.stable_refinements;
  return result;
}

}  // namespace hypspec
