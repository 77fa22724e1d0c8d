#include "hypspec/cli/run.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "hypspec/cli/config.hpp"
#include "hypspec/essential.hpp"
#include "hypspec/landau.hpp"
#include "hypspec/modes.hpp"
#include "hypspec/weyl.hpp"

namespace hypspec::cli {

namespace {

using nlohmann::ordered_json;

constexpr double kHypWMu[] = {10.0, 100.0, 1000.0, 10000.0};
constexpr double kHypWTau[] = {0.1, 0.5, 0.9};
constexpr std::size_t kGrowthGrid = 257;
constexpr double kGrowthSpan = 20.0;

ModeOptions mode_options(const Numerics& n) {
  ModeOptions o;
  o.n0 = n.grid_n;
  o.t_max = n.t_max;
  return o;
}

WeylOptions weyl_options(const Numerics& n) {
  WeylOptions o;
  o.delta = n.delta;
  o.bracket_C = n.bracket_C;
  o.quad_tol = n.quad_tol;
  return o;
}

const End& pick_end(const SurfaceConfig& cfg, std::size_t index) {
  if (index >= cfg.ends.size()) {
    throw std::invalid_argument("--end: index " + std::to_string(index) + " out of range (config has " +
                                std::to_string(cfg.ends.size()) + " ends)");
  }
  return cfg.ends[index];
}

// Dirichlet count of every modeled end, summed in file order.
CountResult count_surface(const SurfaceConfig& cfg, double lambda) {
  CountResult total;
  total.lambda = lambda;
  total.converged = true;
  const auto opts = mode_options(cfg.numerics);
  for (const auto& end : cfg.ends) {
    const CountResult r = count_end(end, lambda, opts);
    total.count += r.count;
    total.converged = total.converged && r.converged;
    total.n = std::max(total.n, r.n);
    total.t_hi = std::max(total.t_hi, r.t_hi);
  }
  return total;
}

void check_lambdas(const std::vector<double>& lambdas, const std::string& flag) {
  if (lambdas.empty()) throw std::invalid_argument(flag + ": need at least one value");
  for (double l : lambdas) {
    if (!std::isfinite(l)) throw std::invalid_argument(flag + ": values must be finite");
  }
}

std::vector<double> geometric_lambdas(const std::vector<double>& spec) {
  const double start = spec[0];
  const double factor = spec[1];
  const double count = spec[2];
  if (!(start > 0.0)) throw std::invalid_argument("--lambda-geom: start must be > 0");
  if (!(factor > 1.0)) throw std::invalid_argument("--lambda-geom: factor must be > 1");
  if (!(count >= 1.0) || count != std::floor(count)) {
    throw std::invalid_argument("--lambda-geom: count must be a positive integer");
  }
  std::vector<double> out;
  for (int k = 0; k < static_cast<int>(count); ++k) out.push_back(start * std::pow(factor, k));
  return out;
}

ordered_json count_json(const CountResult& r) {
  ordered_json j;
  j["count"] = r.count;
  j["lambda"] = r.lambda;
  j["n"] = r.n;
  j["t_hi"] = r.t_hi;
  j["mode_range"] = r.mode_range.empty() ? ordered_json(nullptr)
                                          : ordered_json::array({r.mode_range.lo, r.mode_range.hi});
  j["converged"] = r.converged;
  return j;
}

int finish(bool converged) { return converged ? kOk : kNotConverged; }

struct Flags {
  double mu = 0.0;
  double b = 0.0;
  double beta = 0.0;
  double lambda = 0.0;
  std::string config;
  std::size_t end = 0;
  bool json = false;
  std::vector<double> lambdas;
  std::vector<double> lambda_geom;
  std::string out_path;
  std::size_t grid = MorseOptions{}.n;
  std::vector<double> window;
};

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral counting for magnetic Laplacians on funnel and cusp ends", "hypspec"};
  app.require_subcommand(1);
  Flags f;

  auto* nlandau = app.add_subcommand("nlandau", "Landau counting function N(mu, b)");
  nlandau->add_option("--mu", f.mu, "spectral parameter")->required();
  nlandau->add_option("--b", f.b, "field intensity (>= 0)")->required();

  auto* sset = app.add_subcommand("sset", "discrete levels S(beta) as a JSON list");
  sset->add_option("--beta", f.beta)->required();

  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", f.config, "surface description (JSON)")->required();
  };
  auto add_lambda = [&](CLI::App* sub) { sub->add_option("--lambda", f.lambda)->required(); };

  auto* count = app.add_subcommand("count-end", "Dirichlet eigenvalue count of one end");
  add_config(count);
  count->add_option("--end", f.end, "index into ends")->required();
  add_lambda(count);
  count->add_flag("--json", f.json, "single-line JSON output");

  auto* weyl = app.add_subcommand("weyl", "Landau-level integral over all ends");
  add_config(weyl);
  add_lambda(weyl);

  auto* compare = app.add_subcommand("compare", "CSV table of counts against the Landau integral");
  add_config(compare);
  compare->add_option("--lambdas", f.lambdas, "comma-separated lambda values")->delimiter(',')->required();
  compare->add_option("--out", f.out_path, "CSV path (default: stdout)");

  auto* fit = app.add_subcommand("fit", "log-log exponent fit of the total count");
  add_config(fit);
  auto* fit_list = fit->add_option("--lambdas", f.lambdas, "comma-separated lambda values")->delimiter(',');
  auto* fit_geom = fit->add_option("--lambda-geom", f.lambda_geom, "start,factor,count")
                       ->delimiter(',')
                       ->expected(3);
  fit_list->excludes(fit_geom);

  auto* essential = app.add_subcommand("essential", "essential spectrum of a constant-field surface");
  add_config(essential);

  auto* morse = app.add_subcommand("morse-check", "finite-difference levels of the Morse limit operator");
  morse->add_option("--beta", f.beta)->required();
  morse->add_option("--grid", f.grid, "interior grid points")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 26));
  morse->add_option("--window", f.window, "LO,HI in the log coordinate")->delimiter(',')->expected(2);

  auto* holo = app.add_subcommand("holonomy", "holonomy of a constant-field cusp");
  add_config(holo);
  holo->add_option("--end", f.end, "index into ends")->required();

  auto* hyp = app.add_subcommand("hypcheck", "growth hypotheses and the sublevel-area condition");
  add_config(hyp);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*nlandau) {
      out << format_double(landau_count(f.mu, f.b)) << '\n';
      return kOk;
    }
    if (*sset) {
      out << ordered_json(landau_level_set(f.beta).levels).dump() << '\n';
      return kOk;
    }
    if (*morse) {
      MorseOptions opts;
      opts.n = f.grid;
      if (!f.window.empty()) {
        opts.s_lo = f.window[0];
        opts.s_hi = f.window[1];
        if (!(opts.s_lo < opts.s_hi)) throw std::invalid_argument("--window: require LO < HI");
      }
      const MorseReport r = morse_check(f.beta, opts);
      ordered_json j;
      j["beta"] = r.beta;
      j["predicted"] = r.predicted;
      j["computed"] = r.computed;
      j["max_abs_err"] = r.max_abs_err;
      j["converged"] = r.converged;
      out << j.dump() << '\n';
      return finish(r.converged);
    }

    const SurfaceConfig cfg = load_config(f.config);

    if (*count) {
      CountResult r = count_end(pick_end(cfg, f.end), f.lambda, mode_options(cfg.numerics));
      if (f.json) {
        out << count_json(r).dump() << '\n';
      } else {
        out << "count=" << r.count << '\n'
            << "lambda=" << format_double(r.lambda) << '\n'
            << "n=" << r.n << '\n'
            << "t_hi=" << format_double(r.t_hi) << '\n';
        if (r.mode_range.empty()) out << "mode_range=\n";
        else out << "mode_range=" << r.mode_range.lo << ',' << r.mode_range.hi << '\n';
        out << "converged=" << (r.converged ? "true" : "false") << '\n';
      }
      return finish(r.converged);
    }
    if (*weyl) {
      out << format_double(weyl_integral(cfg.surface(), f.lambda, weyl_options(cfg.numerics))) << '\n';
      return kOk;
    }
    if (*compare) {
      check_lambdas(f.lambdas, "--lambdas");
      const SurfaceEnds ends = cfg.surface();
      const WeylOptions wopts = weyl_options(cfg.numerics);
      std::ostringstream csv;
      csv << "lambda,count,weyl,lower,upper,ratio,converged\r\n";
      bool all_converged = true;
      for (double lambda : f.lambdas) {
        const CountResult r = count_surface(cfg, lambda);
        const double w = weyl_integral(ends, lambda, wopts);
        const Bracket br = theorem1_bracket(ends, lambda, wopts);
        const double ratio = static_cast<double>(r.count) / w;
        all_converged = all_converged && r.converged;
        csv << format_double(lambda) << ',' << r.count << ',' << format_double(w) << ','
            << format_double(br.lower) << ',' << format_double(br.upper) << ',' << format_double(ratio)
            << ',' << (r.converged ? "true" : "false") << "\r\n";
      }
      if (f.out_path.empty()) {
        out << csv.str();
      } else {
        std::ofstream file(f.out_path, std::ios::binary);
        if (!file) throw std::invalid_argument("--out: cannot write " + f.out_path);
        file << csv.str();
      }
      return finish(all_converged);
    }
    if (*fit) {
      if (f.lambdas.empty() && f.lambda_geom.empty()) {
        throw std::invalid_argument("--lambdas: one of --lambdas or --lambda-geom is required");
      }
      const auto lambdas = f.lambda_geom.empty() ? f.lambdas : geometric_lambdas(f.lambda_geom);
      check_lambdas(lambdas, f.lambda_geom.empty() ? "--lambdas" : "--lambda-geom");
      std::vector<std::pair<double, double>> samples;
      bool all_converged = true;
      for (double lambda : lambdas) {
        const CountResult r = count_surface(cfg, lambda);
        all_converged = all_converged && r.converged;
        samples.emplace_back(lambda, static_cast<double>(r.count));
      }
      const ExponentFit e = fit_exponent(samples);
      ordered_json j;
      j["slope"] = e.slope;
      j["alpha"] = e.alpha;
      j["samples"] = ordered_json::array();
      for (const auto& [lambda, c] : samples) j["samples"].push_back({lambda, c});
      j["converged"] = all_converged;
      out << j.dump() << '\n';
      return finish(all_converged);
    }
    if (*essential) {
      const SpectrumSet s = essential_spectrum(cfg.surface());
      ordered_json j;
      j["bottom"] = s.half_line_bottom ? ordered_json(*s.half_line_bottom) : ordered_json(nullptr);
      j["points"] = s.points;
      j["empty"] = s.empty();
      out << j.dump() << '\n';
      return kOk;
    }
    if (*holo) {
      const End& end = pick_end(cfg, f.end);
      const auto* cusp = std::get_if<CuspEnd>(&end);
      if (!cusp) throw std::invalid_argument("--end: end " + std::to_string(f.end) + " is a funnel; holonomy needs a cusp");
      ordered_json j;
      j["holonomy"] = holonomy(*cusp);
      j["integral"] = has_integral_holonomy(*cusp);
      out << j.dump() << '\n';
      return kOk;
    }
    if (*hyp) {
      ordered_json j;
      j["ends"] = ordered_json::array();
      bool unbounded = true;
      for (const auto& end : cfg.ends) {
        const double t0 = start_of(end);
        const double span = std::min(cfg.numerics.t_max, kGrowthSpan);
        std::vector<double> grid(kGrowthGrid);
        for (std::size_t i = 0; i < kGrowthGrid; ++i) {
          grid[i] = t0 + span * static_cast<double>(i) / static_cast<double>(kGrowthGrid - 1);
        }
        const GrowthReport g = check_growth_hypotheses(end, grid);
        unbounded = unbounded && g.h0;
        j["ends"].push_back({{"h0", g.h0}, {"h1_or_h2", g.h1_or_h2}, {"witness", g.witness}});
      }
      if (unbounded) {
        const HypWReport w = check_hypW(cfg.surface(), kHypWMu, kHypWTau);
        j["hypW"] = {{"holds", w.holds}, {"c1_witness", w.c1_witness}, {"evaluated", w.evaluated}};
      } else {
        j["hypW"] = nullptr;
      }
      out << j.dump() << '\n';
      return kOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  }
  return kInvalid;
}

}  // namespace hypspec::cli
