#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "hypspec/essential.hpp"
#include "hypspec/landau.hpp"
#include "oracles.hpp"

using namespace hypspec;

namespace {

FunnelEnd funnel(double beta, double tau = 1.0) {
  return {tau, 0.0, RadialField::constant(FieldKind::funnel_cosh_poly, beta), 0.0};
}

// Constant-field cusp whose gauge tends to `limit` (in units of turns).
CuspEnd cusp(double b, double limit, double L = 1.0, double t0 = 0.0) {
  return {L, t0, RadialField::constant(FieldKind::cusp_y_poly, b), limit + L * b * std::exp(-t0)};
}

}  // namespace

TEST_SUITE("essential") {

TEST_CASE("holonomy") {
  const auto zero = cusp(2.0, 0.0, 1.5, 0.3);
  CHECK(std::abs(holonomy(zero)) < 1e-12);
  CHECK(has_integral_holonomy(zero));

  const auto half = cusp(2.0, 0.5);
  CHECK(holonomy(half) == doctest::Approx(oracle::pi));
  CHECK_FALSE(has_integral_holonomy(half));

  auto shifted = half;
  shifted.xi += 1.0;
  CHECK(holonomy(shifted) - holonomy(half) == doctest::Approx(2 * oracle::pi));
  auto zero_shift = zero;
  zero_shift.xi += 3.0;
  CHECK(has_integral_holonomy(zero_shift));

  // The limit of a(t) ignores the decaying part L b e^{-t}.
  const auto far = gauge_function(zero, 40.0);
  CHECK(std::abs(2 * oracle::pi * far - holonomy(zero)) < 1e-12);

  const CuspEnd growing{1.0, 0.0, RadialField(FieldKind::cusp_y_poly, {0.0, 1.0}), 0.0};
  CHECK_THROWS_AS(holonomy(growing), std::domain_error);
}

TEST_CASE("essential spectrum assembly") {
  const auto two = essential_spectrum(SurfaceEnds{{funnel(1.0), funnel(3.0)}, {}});
  REQUIRE(two.half_line_bottom);
  CHECK(*two.half_line_bottom == 1.25);
  CHECK(two.points == std::vector<double>{1.0});
  CHECK_FALSE(two.empty());

  const auto pure = essential_spectrum(SurfaceEnds{{}, {cusp(2.0, 0.5)}});
  CHECK(pure.empty());
  CHECK_FALSE(pure.half_line_bottom);
  CHECK(pure.points.empty());

  const auto mixed = essential_spectrum(SurfaceEnds{{funnel(0.4)}, {cusp(2.0, 0.0)}});
  REQUIRE(mixed.half_line_bottom);
  CHECK(*mixed.half_line_bottom == doctest::Approx(0.41));
  CHECK(mixed.points.empty());

  const auto cusps = essential_spectrum(SurfaceEnds{{}, {cusp(2.0, 0.0), cusp(1.0, 0.25), cusp(3.0, 1.0)}});
  REQUIRE(cusps.half_line_bottom);
  CHECK(*cusps.half_line_bottom == 4.25);
  CHECK(cusps.points.empty());

  const auto pure_many = essential_spectrum(SurfaceEnds{{}, {cusp(1.0, 0.5), cusp(2.0, 0.3)}});
  CHECK(pure_many.empty());
}

TEST_CASE("essential spectrum symmetries") {
  const SurfaceEnds a{{funnel(2.5), funnel(-4.2), funnel(1.1)}, {cusp(1.5, 0.0)}};
  const SurfaceEnds b{{funnel(1.1), funnel(4.2), funnel(-2.5)}, {cusp(-1.5, 2.0)}};
  const auto sa = essential_spectrum(a);
  const auto sb = essential_spectrum(b);
  CHECK(sa.half_line_bottom == sb.half_line_bottom);
  CHECK(sa.points == sb.points);
  for (double p : sa.points) CHECK(p < *sa.half_line_bottom);
  CHECK(std::is_sorted(sa.points.begin(), sa.points.end()));
  CHECK(std::adjacent_find(sa.points.begin(), sa.points.end()) == sa.points.end());
}

TEST_CASE("essential spectrum needs constant fields") {
  const FunnelEnd growing{1.0, 0.0, RadialField(FieldKind::funnel_cosh_poly, {0.0, 1.0}), 0.0};
  CHECK_THROWS_AS(essential_spectrum(SurfaceEnds{{growing}, {}}), std::domain_error);
}

TEST_CASE("morse check reproduces S(beta)") {
  const auto r = morse_check(2.5);
  CHECK(r.predicted == std::vector<double>{2.5, 5.5});
  REQUIRE(r.computed.size() == 2);
  CHECK(r.max_abs_err < 1e-3);
  CHECK(r.converged);

  const auto big = morse_check(5.5);
  CHECK(big.predicted == std::vector<double>{5.5, 14.5, 21.5, 26.5, 29.5});
  CHECK(big.computed.size() == 5);
  CHECK(big.max_abs_err < 1e-2);

  const auto none = morse_check(0.4);
  CHECK(none.predicted.empty());
  CHECK(none.computed.empty());
}

TEST_CASE("morse error shrinks with the grid") {
  MorseOptions coarse;
  coarse.n = 1000;
  MorseOptions fine;
  fine.s_lo = -25.0;
  fine.s_hi = 5.0;
  fine.n = 2500;
  const auto a = morse_check(2.5, coarse);
  const auto b = morse_check(2.5, fine);
  CHECK(b.max_abs_err < a.max_abs_err);
}

TEST_CASE("morse check flags a short window") {
  MorseOptions opts;
  opts.s_lo = -1.0;
  opts.s_hi = 3.0;
  opts.n = 2000;
  CHECK_FALSE(morse_check(2.5, opts).converged);
  opts.s_lo = 3.0;
  CHECK_THROWS_AS(morse_check(2.5, opts), std::invalid_argument);
}

TEST_CASE("funnel mode limit") {
  const auto r = funnel_mode_limit_check(1.0, {10.0, 100.0, 1000.0});
  CHECK(r.limit == 1.0);
  REQUIRE(r.distance.size() == 3);
  CHECK(r.distance.back() < 0.02);
  CHECK(r.converged);
  // The lowest Landau level is exact for every rho; what remains is grid error.
  for (std::size_t i = 0; i < 3; ++i) CHECK(r.distance[i] <= 2.0 * r.refinement[i]);

  const auto b4 = funnel_mode_limit_check(0.4, {10.0});
  CHECK(b4.limit == doctest::Approx(0.41));
  CHECK_THROWS_AS(funnel_mode_limit_check(1.0, {10.0, 5.0}), std::invalid_argument);
  CHECK_THROWS_AS(funnel_mode_limit_check(1.0, {-1.0}), std::invalid_argument);
}

}  // TEST_SUITE
