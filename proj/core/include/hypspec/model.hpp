#pragma once

// Surface ends (funnels and cusps), radial magnetic field profiles and their
// radial gauges.
//
// Both end types live on S^1 x (t0, inf) in a geodesic radial coordinate t:
//
//   funnel:  g = tau^2 cosh^2(t) dtheta^2 + dt^2,   dm = tau cosh(t) dtheta dt
//   cusp:    g = L^2 e^{-2t} dtheta^2 + dt^2,        dm = L e^{-t} dtheta dt
//
// (the cusp is written in t = ln y). A radial field is a signed density
// b~(t) with dA = b~ dm; the intensity is b = |b~|. The gauge is A = a(t) dtheta
// with a(t0) = xi, so that a'(t) = -b~(t) * rho(t) where rho is the radial
// area density above.

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace hypspec {

enum class FieldKind {
  funnel_cosh_poly,  // b~(t) = sum_i c_i cosh^i(t)
  cusp_y_poly,       // b~(t) = sum_i c_i e^{i t}   (polynomial in y = e^t)
};

/// Polynomial field profile in the canonical radial variable of its end.
class RadialField {
 public:
  RadialField(FieldKind kind, std::vector<double> coeffs);

  static RadialField constant(FieldKind kind, double value) {
    return RadialField(kind, {value});
  }

  FieldKind kind() const { return kind_; }
  std::span<const double> coeffs() const { return coeffs_; }

  /// Index of the last nonzero coefficient (0 for the zero polynomial).
  int degree() const { return degree_; }
  bool unbounded() const { return degree_ >= 1; }

  /// Polynomial value at the canonical variable x (cosh t or e^t).
  double poly(double x) const;
  double poly_derivative(double x) const;

  /// Sign of the leading coefficient (+1 for the zero field).
  double leading_sign() const;

  /// x beyond which neither p nor p' has a real root (Cauchy bound); |p| is
  /// monotone increasing for x above it when degree >= 1.
  double monotone_bound() const;

 private:
  FieldKind kind_;
  std::vector<double> coeffs_;
  int degree_ = 0;
};

struct FunnelEnd {
  double tau = 1.0;
  double t0 = 0.0;
  RadialField field = RadialField::constant(FieldKind::funnel_cosh_poly, 0.0);
  double xi = 0.0;
};

struct CuspEnd {
  double L = 1.0;
  double t0 = 0.0;
  RadialField field = RadialField::constant(FieldKind::cusp_y_poly, 0.0);
  double xi = 0.0;
};

using End = std::variant<FunnelEnd, CuspEnd>;

struct SurfaceEnds {
  std::vector<FunnelEnd> funnels;
  std::vector<CuspEnd> cusps;

  std::size_t size() const { return funnels.size() + cusps.size(); }
};

// Throw std::invalid_argument naming the offending field.
void validate(const FunnelEnd& end);
void validate(const CuspEnd& end);
void validate(const End& end);
void validate(const SurfaceEnds& ends);

double start_of(const End& end);
const RadialField& field_of(const End& end);
double gauge_offset(const End& end);

/// Signed field b~ at radial coordinate t. Throws std::domain_error if t < t0.
double eval_field(const FunnelEnd& end, double t);
double eval_field(const CuspEnd& end, double t);
double eval_field(const End& end, double t);

/// d b~ / dt.
double field_slope(const End& end, double t);

/// Theta component a(t) of the radial gauge, in closed form.
double gauge_function(const FunnelEnd& end, double t);
double gauge_function(const CuspEnd& end, double t);
double gauge_function(const End& end, double t);

/// Flux between t0 and t per unit angle, int_{t0}^t b~ rho = xi - a(t),
/// computed without reference to xi.
double enclosed_flux(const End& end, double t);

/// Radial area density rho(t) (area element is rho dtheta dt).
double area_density(const End& end, double t);

/// 1/|d/dtheta|_g: 1/(tau cosh t) for funnels, e^t/L for cusps.
double angular_factor(const End& end, double t);

/// Ground-state shift from the half-density transform: (1 + sech^2 t)/4 on
/// funnels, 1/4 on cusps.
double density_shift(const End& end, double t);

/// A point T >= t0 with |b~(t)| >= level for every t >= T, located on the
/// monotone tail of the field. Requires an unbounded field.
double field_exceeds_beyond(const End& end, double level);

/// Area 2 pi L e^{-t0} of a cusp end.
double cusp_area(const CuspEnd& end);

struct GrowthReport {
  bool h0 = false;        // field intensity -> infinity
  bool h1_or_h2 = false;  // gradient bound holds on the grid
  double witness = 0.0;   // smallest admissible constant on the grid
  double witness_t = 0.0; // where it is attained
};

/// Discrete check of the growth hypotheses. Funnels: |b~'(t)| <= C (b + 1).
/// Cusps: |y d_y b~| <= C (b + 1) e^{t} (e^{t} stands in for e^{d(z)}).
/// h1_or_h2 is true when the witness is finite and <= c_max.
GrowthReport check_growth_hypotheses(const End& end, std::span<const double> grid,
                                     double c_max = 1e6);

}  // namespace hypspec
