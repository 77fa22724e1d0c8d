#include "hypspec/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "hypspec/landau.hpp"

namespace hypspec {

namespace {

constexpr std::size_t kScanCells = 4096;
constexpr long kMaxLevelsPerCell = 100000;

double intensity(const End& end, double t) { return std::abs(eval_field(end, t)); }

// Root of f on [a, b] given f(a) and f(b) of opposite sign (or one zero).
double bracketed_root(const std::function<double(double)>& f, double a, double b, double fa,
                      double fb) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  std::uintmax_t iters = 200;
  const auto tol = boost::math::tools::eps_tolerance<double>(std::numeric_limits<double>::digits - 2);
  const auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb, tol, iters);
  return 0.5 * (r.first + r.second);
}

// Gauss-Kronrod on [a, b] through the unit interval. Boost 1.74 compares the
// unscaled error with a scaled tolerance, which never converges on short pieces.
double integrate_piece(const std::function<double(double)>& f, double a, double b, double tol) {
  const double w = b - a;
  auto unit = [&](double x) { return w * f(a + w * x); };
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(unit, 0.0, 1.0, 20, tol);
}

struct Scan {
  std::vector<double> t;
  std::vector<double> signed_field;
};

Scan scan_field(const End& end, double t_lo, double t_hi) {
  Scan s;
  s.t.resize(kScanCells + 1);
  s.signed_field.resize(kScanCells + 1);
  for (std::size_t i = 0; i <= kScanCells; ++i) {
    s.t[i] = i == kScanCells ? t_hi : t_lo + (t_hi - t_lo) * static_cast<double>(i) / kScanCells;
    s.signed_field[i] = eval_field(end, s.t[i]);
  }
  return s;
}

// Points in (t_lo, t_hi) where the integrand N(mu, b(t)) can jump or kink:
// b = mu/(2k+1) and sign changes of b~.
std::vector<double> landau_breakpoints(const End& end, double mu, double t_lo, double t_hi) {
  const Scan s = scan_field(end, t_lo, t_hi);
  std::vector<double> points;
  for (std::size_t i = 0; i < kScanCells; ++i) {
    const double a = s.t[i];
    const double b = s.t[i + 1];
    const double fa = s.signed_field[i];
    const double fb = s.signed_field[i + 1];
    if ((fa < 0.0) != (fb < 0.0)) {
      points.push_back(bracketed_root([&](double t) { return eval_field(end, t); }, a, b, fa, fb));
    }
    const double lo = std::min(std::abs(fa), std::abs(fb));
    const double hi = std::max(std::abs(fa), std::abs(fb));
    if (hi == lo) continue;
    const double k_min = std::max(0.0, std::ceil(0.5 * (mu / hi - 1.0)));
    const double k_max = lo > 0.0 ? std::floor(0.5 * (mu / lo - 1.0)) : k_min + kMaxLevelsPerCell;
    for (double k = k_min; k <= std::min(k_max, k_min + kMaxLevelsPerCell); k += 1.0) {
      const double level = mu / (2.0 * k + 1.0);
      auto g = [&](double t) { return intensity(end, t) - level; };
      const double ga = std::abs(fa) - level;
      const double gb = std::abs(fb) - level;
      if ((ga < 0.0) == (gb < 0.0) && ga != 0.0 && gb != 0.0) continue;
      points.push_back(bracketed_root(g, a, b, ga, gb));
    }
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

double weighted_landau_integral(const End& end, double mu,
                                const std::function<double(double)>& weight, double quad_tol) {
  if (mu <= 0.0) return 0.0;
  const double t0 = start_of(end);
  const double T = field_exceeds_beyond(end, mu);
  if (T <= t0) return 0.0;

  std::vector<double> knots = landau_breakpoints(end, mu, t0, T);
  knots.insert(knots.begin(), t0);
  knots.push_back(T);
  // Knots that agree to rounding leave slivers the adaptive rule cannot resolve.
  const double merge = 1e-12 * (1.0 + std::abs(T) + std::abs(t0));
  knots.erase(std::unique(knots.begin(), knots.end(),
                          [merge](double a, double b) { return std::abs(b - a) <= merge; }),
              knots.end());
  if (knots.size() < 2) return 0.0;
  knots.back() = T;

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    if (!(knots[i + 1] > knots[i])) continue;
    // The number of open levels is constant between knots; freezing it at the
    // midpoint keeps rounding near a knot from reintroducing the jump.
    const double b_mid = intensity(end, 0.5 * (knots[i] + knots[i + 1]));
    std::function<double(double)> integrand;
    if (b_mid > 0.0) {
      const double levels = std::round(landau_count(mu, b_mid) / b_mid);
      integrand = [&, levels](double t) {
        const double b = intensity(end, t);
        return weight(b) * b * levels * area_density(end, t);
      };
    } else {
      integrand = [&](double t) {
        const double b = intensity(end, t);
        return weight(b) * landau_count(mu, b) * area_density(end, t);
      };
    }
    total += integrate_piece(integrand, knots[i], knots[i + 1], quad_tol);
  }
  return total;
}

void require_unbounded(const SurfaceEnds& ends) {
  validate(ends);
  for (std::size_t i = 0; i < ends.funnels.size(); ++i) {
    if (!ends.funnels[i].field.unbounded()) {
      throw std::domain_error("funnels[" + std::to_string(i) + "]: bounded field, integral diverges");
    }
  }
  for (std::size_t i = 0; i < ends.cusps.size(); ++i) {
    if (!ends.cusps[i].field.unbounded()) {
      throw std::domain_error("cusps[" + std::to_string(i) + "]: bounded field, integral diverges");
    }
  }
}

template <class F>
double sum_over_ends(const SurfaceEnds& ends, F&& per_end) {
  double total = 0.0;
  for (const auto& f : ends.funnels) total += per_end(End{f});
  for (const auto& c : ends.cusps) total += per_end(End{c});
  return total;
}

// int rho dt over [t1, t2], exact.
double density_mass(const End& end, double t1, double t2) {
  if (const auto* f = std::get_if<FunnelEnd>(&end)) return f->tau * (std::sinh(t2) - std::sinh(t1));
  const double L = std::get<CuspEnd>(end).L;
  return L * std::exp(-t1) * -std::expm1(-(t2 - t1));
}

}  // namespace

void validate(const WeylOptions& opts) {
  if (!(opts.delta > 1.0 / 3.0 && opts.delta < 0.4)) {
    throw std::invalid_argument("delta: must lie strictly inside (1/3, 2/5)");
  }
  if (!(opts.bracket_C >= 0.0) || !std::isfinite(opts.bracket_C)) {
    throw std::invalid_argument("bracket_C: must be a finite value >= 0");
  }
  if (!(opts.quad_tol > 0.0)) throw std::invalid_argument("quad_tol: must be > 0");
}

double landau_integral(const End& end, double mu, double quad_tol) {
  return weighted_landau_integral(end, mu, [](double) { return 1.0; }, quad_tol);
}

double weyl_integral(const SurfaceEnds& ends, double lambda, const WeylOptions& opts) {
  require_unbounded(ends);
  if (!(opts.quad_tol > 0.0)) throw std::invalid_argument("quad_tol: must be > 0");
  const double mu = lambda - 0.25;
  return sum_over_ends(ends, [&](const End& e) { return landau_integral(e, mu, opts.quad_tol); });
}

double omega(const End& end, double mu) {
  validate(end);
  if (!field_of(end).unbounded()) throw std::domain_error("omega: bounded field, sublevel area infinite");
  const double t0 = start_of(end);
  if (mu <= 0.0) return 0.0;
  const double T = field_exceeds_beyond(end, mu);
  if (T <= t0) return 0.0;

  const Scan s = scan_field(end, t0, T);
  auto excess = [&](double t) { return intensity(end, t) - mu; };
  double area = 0.0;
  bool inside = std::abs(s.signed_field[0]) < mu;
  double enter = t0;
  for (std::size_t i = 0; i < kScanCells; ++i) {
    const double ga = std::abs(s.signed_field[i]) - mu;
    const double gb = std::abs(s.signed_field[i + 1]) - mu;
    if ((ga < 0.0) == (gb < 0.0)) continue;
    const double root = bracketed_root(excess, s.t[i], s.t[i + 1], ga, gb);
    if (inside) area += density_mass(end, enter, root);
    else enter = root;
    inside = !inside;
  }
  if (inside) area += density_mass(end, enter, T);
  return 2.0 * std::numbers::pi * area;
}

double omega(const SurfaceEnds& ends, double mu) {
  validate(ends);
  return sum_over_ends(ends, [mu](const End& e) { return omega(e, mu); });
}

HypWReport check_hypW(const SurfaceEnds& ends, std::span<const double> mu_grid,
                      std::span<const double> tau_grid, double c1_max) {
  if (mu_grid.empty()) throw std::invalid_argument("mu_grid: must be nonempty");
  if (tau_grid.empty()) throw std::invalid_argument("tau_grid: must be nonempty");
  for (double tau : tau_grid) {
    if (!(tau > 0.0 && tau < 1.0)) throw std::invalid_argument("tau_grid: entries must lie in (0, 1)");
  }
  HypWReport report;
  bool finite = true;
  for (double mu : mu_grid) {
    const double base = omega(ends, mu);
    for (double tau : tau_grid) {
      if (base == 0.0) {
        std::ostringstream note;
        note << "omega(" << mu << ") = 0; skipped tau=" << tau;
        report.notes.push_back(note.str());
        continue;
      }
      const double ratio = (omega(ends, (1.0 + tau) * mu) - base) / (tau * base);
      finite = finite && std::isfinite(ratio);
      report.c1_witness = std::max(report.c1_witness, ratio);
      ++report.evaluated;
    }
  }
  report.holds = finite && report.evaluated > 0 && report.c1_witness <= c1_max;
  return report;
}

Bracket theorem1_bracket(const SurfaceEnds& ends, double lambda, const WeylOptions& opts) {
  validate(opts);
  require_unbounded(ends);
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda: must be > 0");
  const double C = opts.bracket_C;
  const double weight_exp = -(2.0 - 5.0 * opts.delta) / 2.0;
  const double shift = C * std::pow(lambda, 1.0 - 3.0 * opts.delta);
  const double mu_lower = lambda * (1.0 - shift) - 0.25;
  const double mu_upper = lambda * (1.0 + shift) - 0.25;
  auto lower_weight = [&](double b) { return std::max(0.0, 1.0 - C * std::pow(b + 1.0, weight_exp)); };
  auto upper_weight = [&](double b) { return 1.0 + C * std::pow(b + 1.0, weight_exp); };

  Bracket out;
  out.lower = sum_over_ends(ends, [&](const End& e) {
    return weighted_landau_integral(e, mu_lower, lower_weight, opts.quad_tol);
  });
  out.upper = sum_over_ends(ends, [&](const End& e) {
    return weighted_landau_integral(e, mu_upper, upper_weight, opts.quad_tol);
  });
  return out;
}

ExponentFit fit_exponent(std::span<const std::pair<double, double>> samples) {
  if (samples.size() < 3) throw std::invalid_argument("samples: need at least 3 (lambda, count) pairs");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i].second > 0.0)) {
      throw std::invalid_argument("samples[" + std::to_string(i) + "]: count must be > 0");
    }
    if (!(samples[i].first > 0.0) || (i > 0 && !(samples[i].first > samples[i - 1].first))) {
      throw std::invalid_argument("samples[" + std::to_string(i) + "]: lambda must be positive and increasing");
    }
  }
  const double n = static_cast<double>(samples.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& [lambda, count] : samples) {
    sx += std::log(lambda);
    sy += std::log(count);
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [lambda, count] : samples) {
    const double dx = std::log(lambda) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(count) - my);
  }
  ExponentFit fit;
  fit.slope = sxy / sxx;
  fit.alpha = std::exp(my - fit.slope * mx);
  return fit;
}

}  // namespace hypspec
