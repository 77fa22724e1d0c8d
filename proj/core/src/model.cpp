#include "hypspec/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hypspec {

namespace {

void require_in_domain(double t, double t0) {
  if (!(t >= t0)) {
    throw std::domain_error("radial coordinate t=" + std::to_string(t) +
                            " lies below the end boundary t0=" + std::to_string(t0));
  }
}

// int_0^t cosh^n(s) ds for n >= 0 and t >= 0, by the standard reduction
// I_n = cosh^{n-1} sinh / n + (n-1)/n I_{n-2}.
double cosh_power_integral(int n, double t) {
  const double c = std::cosh(t);
  const double s = std::sinh(t);
  double prev = t;  // I_{k-2}
  double cur = s;   // I_{k-1}
  if (n == 0) return prev;
  double cpow = 1.0;  // cosh^{k-1} once updated
  for (int k = 2; k <= n; ++k) {
    cpow *= c;
    const double next = cpow * s / k + (k - 1.0) / k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

// int_{t0}^t e^{k s} ds
double exp_integral(int k, double t0, double t) {
  if (k == 0) return t - t0;
  return std::exp(k * t0) * std::expm1(k * (t - t0)) / k;
}

double canonical_variable(const End& end, double t) {
  return std::holds_alternative<FunnelEnd>(end) ? std::cosh(t) : std::exp(t);
}

double coordinate_of(const End& end, double x) {
  if (std::holds_alternative<FunnelEnd>(end)) return std::acosh(std::max(x, 1.0));
  return std::log(x);
}

}  // namespace

RadialField::RadialField(FieldKind kind, std::vector<double> coeffs)
    : kind_(kind), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("field.coeffs: must be nonempty");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (!std::isfinite(coeffs_[i])) {
      throw std::invalid_argument("field.coeffs[" + std::to_string(i) + "]: not finite");
    }
    if (coeffs_[i] != 0.0) degree_ = static_cast<int>(i);
  }
}

double RadialField::poly(double x) const {
  double acc = 0.0;
  for (int i = degree_; i >= 0; --i) acc = acc * x + coeffs_[i];
  return acc;
}

double RadialField::poly_derivative(double x) const {
  double acc = 0.0;
  for (int i = degree_; i >= 1; --i) acc = acc * x + i * coeffs_[i];
  return acc;
}

double RadialField::leading_sign() const { return coeffs_[degree_] < 0.0 ? -1.0 : 1.0; }

double RadialField::monotone_bound() const {
  if (degree_ == 0) return 0.0;
  const double lead = std::abs(coeffs_[degree_]);
  double root_bound = 0.0;
  for (int i = 0; i < degree_; ++i) root_bound = std::max(root_bound, std::abs(coeffs_[i]) / lead);
  double slope_bound = 0.0;
  for (int i = 1; i < degree_; ++i) {
    slope_bound = std::max(slope_bound, i * std::abs(coeffs_[i]) / (degree_ * lead));
  }
  return 1.0 + std::max(root_bound, slope_bound);
}

void validate(const FunnelEnd& end) {
  if (!(end.tau > 0.0) || !std::isfinite(end.tau)) throw std::invalid_argument("tau: must be > 0");
  if (!(end.t0 >= 0.0) || !std::isfinite(end.t0)) throw std::invalid_argument("t0: funnel requires t0 >= 0");
  if (!std::isfinite(end.xi)) throw std::invalid_argument("xi: not finite");
  if (end.field.kind() != FieldKind::funnel_cosh_poly) {
    throw std::invalid_argument("field.kind: funnel ends take a cosh-poly field");
  }
}

void validate(const CuspEnd& end) {
  if (!(end.L > 0.0) || !std::isfinite(end.L)) throw std::invalid_argument("L: must be > 0");
  if (!std::isfinite(end.t0)) throw std::invalid_argument("t0: not finite");
  if (!std::isfinite(end.xi)) throw std::invalid_argument("xi: not finite");
  if (end.field.kind() != FieldKind::cusp_y_poly) {
    throw std::invalid_argument("field.kind: cusp ends take a y-poly field");
  }
}

void validate(const End& end) {
  std::visit([](const auto& e) { validate(e); }, end);
}

void validate(const SurfaceEnds& ends) {
  if (ends.size() == 0) throw std::invalid_argument("ends: at least one end is required");
  for (const auto& f : ends.funnels) validate(f);
  for (const auto& c : ends.cusps) validate(c);
}

double start_of(const End& end) {
  return std::visit([](const auto& e) { return e.t0; }, end);
}

const RadialField& field_of(const End& end) {
  return std::visit([](const auto& e) -> const RadialField& { return e.field; }, end);
}

double gauge_offset(const End& end) {
  return std::visit([](const auto& e) { return e.xi; }, end);
}

double eval_field(const FunnelEnd& end, double t) {
  require_in_domain(t, end.t0);
  return end.field.poly(std::cosh(t));
}

double eval_field(const CuspEnd& end, double t) {
  require_in_domain(t, end.t0);
  return end.field.poly(std::exp(t));
}

double eval_field(const End& end, double t) {
  return std::visit([t](const auto& e) { return eval_field(e, t); }, end);
}

double field_slope(const End& end, double t) {
  require_in_domain(t, start_of(end));
  const auto& field = field_of(end);
  if (std::holds_alternative<FunnelEnd>(end)) {
    return field.poly_derivative(std::cosh(t)) * std::sinh(t);
  }
  const double y = std::exp(t);
  return field.poly_derivative(y) * y;
}

namespace {

// int_{t0}^t b~(s) rho(s) ds, independent of xi.
double radial_flux(const FunnelEnd& end, double t) {
  const auto c = end.field.coeffs();
  double flux = 0.0;
  for (int i = 0; i <= end.field.degree(); ++i) {
    if (c[i] == 0.0) continue;
    flux += c[i] * (cosh_power_integral(i + 1, t) - cosh_power_integral(i + 1, end.t0));
  }
  return end.tau * flux;
}

double radial_flux(const CuspEnd& end, double t) {
  const auto c = end.field.coeffs();
  double flux = 0.0;
  for (int i = 0; i <= end.field.degree(); ++i) {
    if (c[i] == 0.0) continue;
    flux += c[i] * exp_integral(i - 1, end.t0, t);
  }
  return end.L * flux;
}

}  // namespace

double gauge_function(const FunnelEnd& end, double t) {
  require_in_domain(t, end.t0);
  return end.xi - radial_flux(end, t);
}

double gauge_function(const CuspEnd& end, double t) {
  require_in_domain(t, end.t0);
  return end.xi - radial_flux(end, t);
}

double gauge_function(const End& end, double t) {
  return std::visit([t](const auto& e) { return gauge_function(e, t); }, end);
}

double enclosed_flux(const End& end, double t) {
  return std::visit(
      [t](const auto& e) {
        require_in_domain(t, e.t0);
        return radial_flux(e, t);
      },
      end);
}

double area_density(const End& end, double t) {
  if (const auto* f = std::get_if<FunnelEnd>(&end)) return f->tau * std::cosh(t);
  return std::get<CuspEnd>(end).L * std::exp(-t);
}

double angular_factor(const End& end, double t) {
  if (const auto* f = std::get_if<FunnelEnd>(&end)) return 1.0 / (f->tau * std::cosh(t));
  return std::exp(t) / std::get<CuspEnd>(end).L;
}

double density_shift(const End& end, double t) {
  if (std::holds_alternative<FunnelEnd>(end)) {
    const double sech = 1.0 / std::cosh(t);
    return 0.25 * (1.0 + sech * sech);
  }
  return 0.25;
}

double field_exceeds_beyond(const End& end, double level) {
  const auto& field = field_of(end);
  if (!field.unbounded()) {
    throw std::domain_error("field is bounded; no tail where it exceeds the level");
  }
  const double t0 = start_of(end);
  const double lo = std::max(t0, coordinate_of(end, field.monotone_bound()));
  auto excess = [&](double t) { return std::abs(field.poly(canonical_variable(end, t))) - level; };
  if (excess(lo) >= 0.0) return lo;
  double step = 1.0;
  double hi = lo + step;
  while (excess(hi) < 0.0) {
    step *= 2.0;
    hi = lo + step;
  }
  double a = lo;
  double b = hi;
  for (int it = 0; it < 200 && b - a > 1e-14 * std::max(1.0, std::abs(b)); ++it) {
    const double mid = 0.5 * (a + b);
    (excess(mid) >= 0.0 ? b : a) = mid;
  }
  return b;
}

double cusp_area(const CuspEnd& end) {
  return 2.0 * std::numbers::pi * end.L * std::exp(-end.t0);
}

GrowthReport check_growth_hypotheses(const End& end, std::span<const double> grid,
                                     double c_max) {
  if (grid.empty()) throw std::invalid_argument("grid: must be nonempty");
  const double t0 = start_of(end);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < t0) throw std::invalid_argument("grid[" + std::to_string(i) + "]: below t0");
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw std::invalid_argument("grid[" + std::to_string(i) + "]: not strictly increasing");
    }
  }
  GrowthReport report;
  report.h0 = field_of(end).unbounded();
  const bool cusp = std::holds_alternative<CuspEnd>(end);
  for (double t : grid) {
    const double b = std::abs(eval_field(end, t));
    double weight = b + 1.0;
    if (cusp) weight *= std::exp(t);
    const double ratio = std::abs(field_slope(end, t)) / weight;
    if (!(ratio <= report.witness)) {
      report.witness = ratio;
      report.witness_t = t;
    }
  }
  report.h1_or_h2 = std::isfinite(report.witness) && report.witness <= c_max;
  return report;
}

}  // namespace hypspec
