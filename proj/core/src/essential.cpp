#include "hypspec/essential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <stdexcept>
#include <string>

#include "hypspec/landau.hpp"
#include "hypspec/sturm1d.hpp"
#include "hypspec/modes.hpp"

namespace hypspec {

namespace {

double constant_value(const RadialField& field, const std::string& where) {
  if (field.degree() != 0) {
    throw std::domain_error(where + ": field must be constant (degree 0)");
  }
  return field.coeffs()[0];
}

// Lowest eigenvalue of -d^2 + V on (s_lo, s_hi) with n interior points.
double lowest_level(const Potential& V, double s_lo, double s_hi, std::size_t n, double tol) {
  return lowest_eigenvalues(discretize(V, s_lo, s_hi, n), 1, tol).front();
}

}  // namespace

double holonomy(const CuspEnd& end) {
  validate(end);
  if (end.field.degree() != 0) {
    throw std::domain_error("holonomy undefined for unbounded field (needs a constant field)");
  }
  // a(t) = xi + L b (e^{-t} - e^{-t0}) -> xi - L b e^{-t0}.
  const double b = end.field.coeffs()[0];
  return 2.0 * std::numbers::pi * (end.xi - end.L * b * std::exp(-end.t0));
}

bool has_integral_holonomy(const CuspEnd& end) {
  const double turns = holonomy(end) / (2.0 * std::numbers::pi);
  return std::abs(turns - std::round(turns)) <= 1e-9 * std::max(1.0, std::abs(turns));
}

SpectrumSet essential_spectrum(const SurfaceEnds& ends) {
  validate(ends);
  std::optional<double> bottom;
  auto lower_bottom = [&](double v) { bottom = bottom ? std::min(*bottom, v) : v; };

  std::vector<double> points;
  for (std::size_t k = 0; k < ends.funnels.size(); ++k) {
    const double beta = constant_value(ends.funnels[k].field, "funnels[" + std::to_string(k) + "]");
    lower_bottom(ess_bottom(beta));
    const auto levels = landau_level_set(beta).levels;
    points.insert(points.end(), levels.begin(), levels.end());
  }
  for (std::size_t j = 0; j < ends.cusps.size(); ++j) {
    const double b = constant_value(ends.cusps[j].field, "cusps[" + std::to_string(j) + "]");
    if (has_integral_holonomy(ends.cusps[j])) lower_bottom(ess_bottom(b));
  }

  SpectrumSet set;
  set.half_line_bottom = bottom;
  std::sort(points.begin(), points.end());
  for (double p : points) {
    if (bottom && p >= *bottom) continue;
    if (!set.points.empty() && std::abs(p - set.points.back()) <= 1e-12 * std::max(1.0, std::abs(p))) {
      continue;
    }
    set.points.push_back(p);
  }
  return set;
}

MorseReport morse_check(double beta, const MorseOptions& opts) {
  if (!(opts.s_lo < opts.s_hi)) throw std::invalid_argument("window: require lo < hi");
  if (opts.n < 2) throw std::invalid_argument("grid: need at least 2 points");
  MorseReport report;
  report.beta = beta;
  report.predicted = landau_level_set(beta).levels;

  const auto V = funnel_limit_potential(beta).potential;
  const double threshold = ess_bottom(beta) - opts.margin;
  const auto T = discretize(V, opts.s_lo, opts.s_hi, opts.n);
  const std::size_t k = count_below(T, threshold);
  if (k > 0) report.computed = lowest_eigenvalues(T, k, opts.eig_tol);

  if (report.computed.size() != report.predicted.size()) {
    report.max_abs_err = std::numeric_limits<double>::infinity();
  } else {
    for (std::size_t i = 0; i < k; ++i) {
      report.max_abs_err = std::max(report.max_abs_err, std::abs(report.computed[i] - report.predicted[i]));
    }
  }

  if (k > 0) {
    // Same spacing on a window twice as long, extended into the slowly
    // decaying side.
    const double wide_lo = opts.s_lo - (opts.s_hi - opts.s_lo);
    const double wide = lowest_level(V, wide_lo, opts.s_hi, 2 * opts.n + 1, opts.eig_tol);
    report.converged = std::abs(wide - report.computed.front()) <= opts.window_tol;
  }
  return report;
}

ModeLimitReport funnel_mode_limit_check(double beta, const std::vector<double>& rho_list,
                                        const ModeLimitOptions& opts) {
  ModeLimitReport report;
  report.beta = beta;
  const auto levels = landau_level_set(beta).levels;
  report.limit = levels.empty() ? ess_bottom(beta) : levels.front();
  const double b = std::abs(beta);

  double prev = 0.0;
  for (std::size_t i = 0; i < rho_list.size(); ++i) {
    const double rho = rho_list[i];
    if (!(rho > 0.0)) throw std::invalid_argument("rho[" + std::to_string(i) + "]: must be > 0");
    if (i > 0 && !(rho > prev)) throw std::invalid_argument("rho: values must increase");
    prev = rho;

    // W_rho(y) with y = e^s = 2 rho e^{-t}.
    auto V = [b, rho](double s) {
      const double y = std::exp(s);
      const double u = y * y / (4.0 * rho * rho);
      const double w = (b * (1.0 - u) - y) / (1.0 + u);
      const double z = (y / (2.0 * rho)) / (1.0 + u);
      return 0.25 + w * w + z * z;
    };
    const double s_hi = std::log(2.0 * rho) - opts.t0;
    if (!(s_hi > opts.s_lo)) throw std::invalid_argument("rho: wall falls below s_lo");
    const auto n = static_cast<std::size_t>(std::ceil((s_hi - opts.s_lo) / opts.step));
    const double coarse = lowest_level(V, opts.s_lo, s_hi, n, opts.eig_tol);
    const double fine = lowest_level(V, opts.s_lo, s_hi, 2 * n + 1, opts.eig_tol);
    report.converged = report.converged && std::abs(fine - coarse) <= opts.refine_tol;
    report.rho.push_back(rho);
    report.lowest.push_back(fine);
    report.distance.push_back(std::abs(fine - report.limit));
    report.refinement.push_back(std::abs(fine - coarse));
  }
  return report;
}

}  // namespace hypspec
