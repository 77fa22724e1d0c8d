#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "hypspec/modes.hpp"
#include "hypspec/weyl.hpp"
#include "oracles.hpp"

using namespace hypspec;

namespace {

FunnelEnd funnel(std::vector<double> coeffs, double tau = 1.0, double t0 = 0.0, double xi = 0.0) {
  return {tau, t0, RadialField(FieldKind::funnel_cosh_poly, std::move(coeffs)), xi};
}

CuspEnd cusp(std::vector<double> coeffs, double L = 1.0, double t0 = 0.0, double xi = 0.0) {
  return {L, t0, RadialField(FieldKind::cusp_y_poly, std::move(coeffs)), xi};
}

End shifted(End e, double dxi) {
  std::visit([&](auto& end) { end.xi += dxi; }, e);
  return e;
}

}  // namespace

TEST_SUITE("modes") {

TEST_CASE("funnel mode potential, constant field") {
  const double beta = 1.5;
  const auto m = funnel_mode_potential(funnel({beta}, 1.0, 0.0, 2.0), 2);
  CHECK(m.potential(0.0) == doctest::Approx(0.5));
  CHECK(m.potential(25.0) == doctest::Approx(beta * beta + 0.25).epsilon(1e-8));
  for (double t = 0.0; t < 10.0; t += 0.5) CHECK(m.potential(t) >= 0.25);
}

TEST_CASE("funnel mode potential, cosh field against quadrature") {
  const double tau = 1.3;
  const auto m = funnel_mode_potential(funnel({0.0, 1.0}, tau, 0.0, 0.0), 0);
  for (double t : {0.2, 1.0, 2.7}) {
    // l - a(t) = tau int_0^t cosh^2.
    const double flux = tau * oracle::simpson([](double s) { return std::cosh(s) * std::cosh(s); }, 0.0, t);
    const double g = 1.0 / (tau * std::cosh(t));
    const double expected = flux * flux * g * g + 0.25 * (1.0 + 1.0 / (std::cosh(t) * std::cosh(t)));
    CHECK(m.potential(t) == doctest::Approx(expected).epsilon(1e-10));
    const double closed = (std::sinh(t) * std::cosh(t) / 2 + t / 2) * g * tau;
    CHECK(m.potential(t) == doctest::Approx(closed * closed + 0.25 * (1.0 + g * g * tau * tau)).epsilon(1e-12));
  }
}

TEST_CASE("cusp mode potential") {
  // Constant b = 2 with gauge limit xi - L b e^{-t0} = 2: mode ell = 2 is flat.
  const auto flat = cusp_mode_potential(cusp({2.0}, 1.0, 0.0, 4.0), 2);
  for (double t : {0.0, 1.0, 5.0}) CHECK(flat.potential(t) == doctest::Approx(4.25));
  const auto flat3 = cusp_mode_potential(cusp({3.0}, 2.0, 0.5, 1.0 + 6.0 * std::exp(-0.5)), 1);
  for (double t : {0.5, 2.0, 6.0}) CHECK(flat3.potential(t) == doctest::Approx(9.25));

  // b~ = y, L = 1, t0 = 0: a(t) = xi - t.
  const auto m = cusp_mode_potential(cusp({0.0, 1.0}, 1.0, 0.0, 0.5), 0);
  for (double t : {0.0, 0.5, 2.0, 4.0}) {
    const double w = std::exp(t) * (t - 0.5);
    CHECK(m.potential(t) == doctest::Approx(w * w + 0.25).epsilon(1e-12));
  }
  const auto z = cusp_mode_potential(cusp({0.0, 1.0}), 0);
  CHECK(z.potential(3.0) == doctest::Approx(std::exp(6.0) * 9.0 + 0.25));
}

TEST_CASE("funnel limit potential") {
  const auto m = funnel_limit_potential(2.5);
  CHECK(m.potential(std::log(2.5)) == doctest::Approx(0.25));
  CHECK(funnel_limit_potential(-2.5).potential(0.3) == m.potential(0.3));
  CHECK(m.t_lo == -std::numeric_limits<double>::infinity());
}

TEST_CASE("mode_range") {
  CHECK(mode_range(End{cusp({0.0, 1.0})}, 0.2).empty());
  const auto r = mode_range(End{cusp({0.0, 1.0})}, 100.0);
  CHECK_FALSE(r.empty());
  CHECK(r.lo <= 0);
  CHECK(r.hi >= 0);
  CHECK_THROWS_AS(mode_range(End{funnel({2.0})}, 10.0), std::domain_error);
}

TEST_CASE("modes outside the range carry no eigenvalues") {
  const double lambda = 60.0;
  for (const End& e : {End{cusp({0.5, 1.0}, 1.0, 0.0, 0.3)}, End{funnel({-1.0, 1.0}, 0.7, 0.2, 0.1)}}) {
    const auto r = mode_range(e, lambda);
    REQUIRE_FALSE(r.empty());
    for (std::int64_t ell : {r.lo - 3, r.lo - 1, r.hi + 1, r.hi + 3}) {
      const auto m = mode_potential(e, ell);
      StableCountOptions opts;
      opts.n0 = 2000;
      opts.t_hi0 = start_of(e) + 1.0;
      CHECK(count_stable(m.potential, start_of(e), lambda, opts).count == 0);
    }
  }
}

TEST_CASE("count_end basics") {
  const End c{cusp({0.0, 1.0})};
  CHECK(count_end(c, 0.0).count == 0);
  CHECK(count_end(c, 0.25).count == 0);
  CHECK_THROWS_AS(count_end(End{funnel({2.0})}, 10.0), std::domain_error);
  try {
    count_end(End{cusp({3.0})}, 10.0);
  } catch (const std::domain_error& e) {
    CHECK(std::string(e.what()).find("mode sum diverges") != std::string::npos);
  }
}

TEST_CASE("count_end is invariant under xi -> xi + 1") {
  const std::vector<End> ends = {End{funnel({0.0, 1.0}, 1.0, 0.0, 0.3)},
                                 End{cusp({0.0, 1.0}, 1.0, 0.0, 0.25)}};
  for (const auto& e : ends) {
    for (double lambda : {20.0, 45.0, 90.0}) {
      const auto a = count_end(e, lambda);
      const auto b = count_end(shifted(e, 1.0), lambda);
      CHECK(a.count == b.count);
      CHECK(b.mode_range.lo == a.mode_range.lo + 1);
      CHECK(b.mode_range.hi == a.mode_range.hi + 1);
    }
  }
}

TEST_CASE("count_end is monotone in lambda and in the domain") {
  const End e{funnel({0.0, 1.0}, 1.0, 0.5, 0.2)};
  std::size_t prev = 0;
  for (double lambda = 5.0; lambda <= 60.0; lambda += 5.0) {
    const auto c = count_end(e, lambda).count;
    CHECK(c >= prev);
    prev = c;
  }
  const End wider{funnel({0.0, 1.0}, 1.0, 0.1, 0.2)};
  CHECK(count_end(wider, 40.0).count >= count_end(e, 40.0).count);

  const End c1{cusp({0.0, 1.0}, 1.0, 0.4, 0.0)};
  const End c0{cusp({0.0, 1.0}, 1.0, -0.4, 0.0)};
  CHECK(count_end(c0, 80.0).count >= count_end(c1, 80.0).count);
}

TEST_CASE("count_end does not depend on the thread count") {
  const End e{funnel({0.0, 1.0}, 1.0, 0.0, 0.0)};
  ModeOptions one;
  one.threads = 1;
  ModeOptions four;
  four.threads = 4;
  const auto a = count_end(e, 70.0, one);
  const auto b = count_end(e, 70.0, four);
  CHECK(a.count == b.count);
  CHECK(a.n == b.n);
  CHECK(a.converged == b.converged);
}

TEST_CASE("cusp count follows the area law") {
  const CuspEnd c = cusp({0.0, 1.0});
  const auto r = count_end(End{c}, 400.0);
  CHECK(r.converged);
  const double target = cusp_area(c) * 400.0 / (4 * oracle::pi);
  CHECK(std::abs(static_cast<double>(r.count) / target - 1.0) < 0.15);
}

TEST_CASE("funnel count tracks the Landau integral") {
  const FunnelEnd f = funnel({0.0, 1.0});
  const auto r = count_end(End{f}, 100.0);
  CHECK(r.converged);
  const double w = weyl_integral(SurfaceEnds{{f}, {}}, 100.0);
  CHECK(std::abs(static_cast<double>(r.count) / w - 1.0) < 0.2);
}

TEST_CASE("a truncated window is flagged") {
  ModeOptions opts;
  opts.t_max = 0.5;
  CHECK_FALSE(count_end(End{cusp({0.0, 1.0})}, 400.0, opts).converged);
}

}  // TEST_SUITE
