#include "hypspec/modes.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

namespace hypspec {

namespace {

constexpr std::array<double, 5> kFloorWeights = {1.0 / 16, 1.0 / 8, 1.0 / 4, 1.0 / 2, 3.0 / 4};
constexpr int kMissesToStop = 3;
constexpr std::int64_t kMaxScannedModes = 200'000'000;

// ell - a(t) = (ell - floor(xi)) - frac(xi) + flux(t); splitting xi this way
// keeps the potentials identical under xi -> xi + 1 with ell -> ell + 1.
struct GaugeSplit {
  std::int64_t base;
  double phase;
};

GaugeSplit split_gauge(double xi) {
  const double base = std::floor(xi);
  return {static_cast<std::int64_t>(base), xi - base};
}

Potential make_potential(const End& end, double offset) {
  return [end, offset](double t) {
    const double w = (offset + enclosed_flux(end, t)) * angular_factor(end, t);
    return w * w + density_shift(end, t);
  };
}

// End data sampled on a uniform safeguard grid over [t0, T], where T is far
// enough out that |b~| >= 4 lambda beyond it.
struct Profile {
  double t0 = 0.0;
  double h = 0.0;
  GaugeSplit gauge{};
  std::vector<double> flux;
  std::vector<double> g2;
  std::vector<double> shift;
  std::vector<double> signed_field;  // s * b~

  std::size_t size() const { return flux.size(); }
  double t(std::size_t i) const { return t0 + static_cast<double>(i) * h; }
  double potential(std::size_t i, double offset) const {
    const double w = offset + flux[i];
    return w * w * g2[i] + shift[i];
  }
};

Profile build_profile(const End& end, double lambda) {
  Profile p;
  p.t0 = start_of(end);
  p.gauge = split_gauge(gauge_offset(end));
  const double spacing = std::min(0.05, 0.1 / std::sqrt(std::max(lambda, 1.0)));
  const double T = std::max(field_exceeds_beyond(end, 4.0 * std::max(lambda, 1.0)), p.t0 + 8.0 * spacing);
  const auto cells = static_cast<std::size_t>(std::ceil((T - p.t0) / spacing));
  p.h = (T - p.t0) / static_cast<double>(cells);
  const double sign = field_of(end).leading_sign();
  const std::size_t n = cells + 1;
  p.flux.resize(n);
  p.g2.resize(n);
  p.shift.resize(n);
  p.signed_field.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = p.t(i);
    const double g = angular_factor(end, t);
    p.flux[i] = enclosed_flux(end, t);
    p.g2[i] = g * g;
    p.shift[i] = density_shift(end, t);
    p.signed_field[i] = sign * eval_field(end, t);
  }
  return p;
}

// Lower bound for the bottom of the spectrum of mode `rel` (ell - base).
double spectral_floor(const Profile& p, std::int64_t rel) {
  const double offset = static_cast<double>(rel) - p.gauge.phase;
  std::array<double, kFloorWeights.size()> mins;
  mins.fill(std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double v = p.potential(i, offset);
    for (std::size_t e = 0; e < kFloorWeights.size(); ++e) {
      const double eps = kFloorWeights[e];
      mins[e] = std::min(mins[e], eps * v + (1.0 - eps) * p.signed_field[i]);
    }
  }
  return *std::max_element(mins.begin(), mins.end());
}

void require_unbounded(const End& end) {
  validate(end);
  if (!field_of(end).unbounded()) {
    throw std::domain_error("essential spectrum reaches lambda; mode sum diverges (bounded field)");
  }
}

// Range in relative mode numbers rel = ell - base.
ModeInterval relative_range(const Profile& p, double lambda) {
  std::size_t weakest = 0;
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (std::abs(p.signed_field[i]) < std::abs(p.signed_field[weakest])) weakest = i;
  }
  const auto start = static_cast<std::int64_t>(std::llround(p.gauge.phase - p.flux[weakest]));

  ModeInterval range;
  bool found = false;
  std::int64_t scanned = 0;
  auto scan = [&](std::int64_t from, std::int64_t step) {
    int misses = 0;
    for (std::int64_t rel = from; misses < kMissesToStop; rel += step) {
      if (++scanned > kMaxScannedModes) {
        throw std::runtime_error("mode scan exceeded its budget; lambda too large for this end");
      }
      if (spectral_floor(p, rel) > lambda) {
        ++misses;
        continue;
      }
      misses = 0;
      if (!found) {
        range = {rel, rel};
        found = true;
      }
      range.lo = std::min(range.lo, rel);
      range.hi = std::max(range.hi, rel);
    }
  };
  scan(start, +1);
  scan(start - 1, -1);
  return range;
}

CountResult count_mode(const End& end, const Profile& p, std::int64_t rel, double lambda,
                       const ModeOptions& opts) {
  CountResult none;
  none.lambda = lambda;
  none.converged = true;

  const double offset = static_cast<double>(rel) - p.gauge.phase;
  std::size_t first = p.size();
  std::size_t last = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.potential(i, offset) < lambda) {
      first = std::min(first, i);
      last = i;
    }
  }
  if (first == p.size()) return none;

  // Keep `tunnel_action` of WKB action on each side of the allowed region;
  // the wall at t0 is physical and never moved.
  std::size_t i = first;
  double action = 0.0;
  while (i > 0 && action < opts.tunnel_action) {
    --i;
    action += std::sqrt(std::max(p.potential(i, offset) - lambda, 0.0)) * p.h;
  }
  const double t_lo = p.t(i);

  const Potential V = make_potential(end, offset);
  double t = p.t(last);
  double v = lambda;
  action = 0.0;
  bool truncated = false;
  while (action < opts.tunnel_action || v < 2.0 * lambda) {
    t += p.h;
    v = V(t);
    action += std::sqrt(std::max(v - lambda, 0.0)) * p.h;
    if (t > p.t0 + opts.t_max) {
      truncated = true;
      break;
    }
  }
  const double t_hi = t + 0.1 * (t - t_lo);

  StableCountOptions sopts;
  const double resolved = (t_hi - t_lo) * std::sqrt(lambda) / opts.wavelength_fraction;
  sopts.n0 = std::max(opts.n0, static_cast<std::size_t>(std::ceil(resolved)));
  sopts.t_hi0 = t_hi;
  sopts.max_refinements = opts.max_refinements;
  sopts.stable_refinements = opts.stable_refinements;
  CountResult r = count_stable(V, t_lo, lambda, sopts);
  if (truncated) r.converged = false;
  return r;
}

}  // namespace

ModePotential funnel_mode_potential(const FunnelEnd& end, std::int64_t ell) {
  validate(end);
  const auto gauge = split_gauge(end.xi);
  const double offset = static_cast<double>(ell - gauge.base) - gauge.phase;
  return {ell, make_potential(End{end}, offset), 0.25, end.t0};
}

ModePotential cusp_mode_potential(const CuspEnd& end, std::int64_t ell) {
  validate(end);
  const auto gauge = split_gauge(end.xi);
  const double offset = static_cast<double>(ell - gauge.base) - gauge.phase;
  return {ell, make_potential(End{end}, offset), 0.25, end.t0};
}

ModePotential mode_potential(const End& end, std::int64_t ell) {
  if (const auto* f = std::get_if<FunnelEnd>(&end)) return funnel_mode_potential(*f, ell);
  return cusp_mode_potential(std::get<CuspEnd>(end), ell);
}

ModePotential funnel_limit_potential(double beta) {
  const double b = std::abs(beta);
  return {0,
          [b](double s) {
            const double w = b - std::exp(s);
            return 0.25 + w * w;
          },
          0.25, -std::numeric_limits<double>::infinity()};
}

ModeInterval mode_range(const End& end, double lambda, const ModeOptions& /*opts*/) {
  require_unbounded(end);
  if (lambda <= 0.25) return {};
  const Profile p = build_profile(end, lambda);
  ModeInterval rel = relative_range(p, lambda);
  if (rel.empty()) return {};
  return {rel.lo + p.gauge.base, rel.hi + p.gauge.base};
}

CountResult count_end(const End& end, double lambda, const ModeOptions& opts) {
  require_unbounded(end);
  CountResult total;
  total.lambda = lambda;
  total.converged = true;
  if (lambda <= 0.25) return total;

  const Profile p = build_profile(end, lambda);
  const ModeInterval rel = relative_range(p, lambda);
  if (rel.empty()) return total;
  total.mode_range = {rel.lo + p.gauge.base, rel.hi + p.gauge.base};

  const auto modes = static_cast<std::size_t>(rel.size());
  std::vector<CountResult> per_mode(modes);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  auto worker = [&] {
    try {
      for (std::size_t k = next++; k < modes && !failed; k = next++) {
        per_mode[k] = count_mode(end, p, rel.lo + static_cast<std::int64_t>(k), lambda, opts);
      }
    } catch (...) {
      if (!failed.exchange(true)) error = std::current_exception();
    }
  };
  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, modes));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  // Integer sums in mode order; the outcome does not depend on scheduling.
  for (const auto& r : per_mode) {
    total.count += r.count;
    total.converged = total.converged && r.converged;
    total.n = std::max(total.n, r.n);
    total.t_hi = std::max(total.t_hi, r.t_hi);
  }
  return total;
}

}  // namespace hypspec
