#pragma once

// Command-line front end. run_cli takes argv-style arguments (program name first)
// and explicit streams so it can be driven in-process.

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "leapgrad.hpp"

namespace leapgrad::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

namespace detail {

struct PolySource {
  std::string inline_text;
  std::string file;
};

inline Polynomial load_polynomial(const PolySource& src) {
  if (!src.inline_text.empty() && !src.file.empty()) throw std::invalid_argument("give either --poly or --poly-file, not both");
  if (!src.file.empty()) {
    std::ifstream in(src.file);
    if (!in) throw std::invalid_argument("cannot open polynomial file '" + src.file + "'");
    return read_polynomial(in);
  }
  if (src.inline_text.empty()) throw std::invalid_argument("a polynomial is required (--poly or --poly-file)");
  return parse_polynomial(src.inline_text);
}

inline double clean_zero(double v) { return v == 0.0 ? 0.0 : v; }

inline void print_min(std::ostream& out, const MinResult& r) {
  out << std::fixed << std::setprecision(6) << "x=" << clean_zero(r.x_arg) << '\n'
      << "value=" << clean_zero(r.value) << '\n'
      << "leaps=" << r.leaps << '\n'
      << "evals=" << r.evals << '\n';
}

inline std::optional<std::uint64_t> seed_from_env() {
  const char* s = std::getenv("LEAPGRAD_SEED");
  if (!s || !*s) return std::nullopt;
  std::size_t pos = 0;
  const std::string text(s);
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("LEAPGRAD_SEED is not an unsigned integer: '" + text + "'");
  }
  if (pos != text.size()) throw std::invalid_argument("LEAPGRAD_SEED is not an unsigned integer: '" + text + "'");
  return v;
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Leap Gradient Algorithm: univariate global minimization"};
  app.name(args.empty() ? "leapgrad" : args.front());
  app.require_subcommand(1);
  // --h is the precision step, so help is long-form only; subcommands inherit this.
  app.set_help_flag("--help", "Print this help message and exit");

  // minimize
  auto* minimize = app.add_subcommand("minimize", "Minimize a polynomial on [a, b]");
  detail::PolySource min_src;
  double a = -1.0, b = 1.0, h = 1e-4, psm_tol = 1e-6;
  std::string algo = "lga";
  std::size_t bfs_n = 0, psm_max_iter = 50000000;
  minimize->add_option("--poly", min_src.inline_text, "Ascending coefficients, space separated");
  minimize->add_option("--poly-file", min_src.file, "File holding the coefficient line");
  minimize->add_option("--a", a, "Left end")->capture_default_str();
  minimize->add_option("--b", b, "Right end")->capture_default_str();
  minimize->add_option("--h", h, "Precision step")->capture_default_str();
  minimize->add_option("--algo", algo, "lga | generic | bfs | zdm | psm")
      ->check(CLI::IsMember({"lga", "generic", "bfs", "zdm", "psm"}))
      ->capture_default_str();
  minimize->add_option("--n", bfs_n, "BFS intervals (default ceil((b-a)/h))");
  minimize->add_option("--tol", psm_tol, "PSM gap tolerance")->capture_default_str();
  minimize->add_option("--max-iter", psm_max_iter, "PSM iteration cap")->capture_default_str();

  // bench
  auto* bench = app.add_subcommand("bench", "Time LGA against a competitor on random polynomials");
  ExperimentConfig cfg;
  std::string competitor = "bfs", roots_model = "complex", out_path, plot_path, trials_path;
  std::optional<std::uint64_t> seed_flag;
  std::size_t bfs_points = 0;
  bench->add_option("--degrees", cfg.degrees, "Comma separated degrees")->delimiter(',')->required();
  bench->add_option("--trials", cfg.trials, "Trials per degree")->capture_default_str();
  bench->add_option("--b", cfg.b_param, "Root rectangle right edge, in (-1, 1]")->capture_default_str();
  bench->add_option("--h", cfg.h, "Precision step")->capture_default_str();
  bench->add_option("--competitor", competitor, "bfs | zdm | psm")->capture_default_str();
  bench->add_option("--seed", seed_flag, "Seed (LEAPGRAD_SEED applies when absent)");
  bench->add_option("--bfs-points", bfs_points, "BFS intervals (default ceil(2/h))");
  bench->add_option("--roots", roots_model, "complex | real")->capture_default_str();
  bench->add_option("--lipschitz-points", cfg.lipschitz_points, "Grid size for the PSM Lipschitz estimate")
      ->capture_default_str();
  bench->add_option("--out", out_path, "Results CSV")->required();
  bench->add_option("--plot-out", plot_path, "Plot data file");
  bench->add_option("--trials-out", trials_path, "Per-trial CSV");

  // roots
  auto* roots = app.add_subcommand("roots", "Complex roots of a polynomial (Laguerre)");
  detail::PolySource roots_src;
  roots->add_option("--poly", roots_src.inline_text, "Ascending coefficients, space separated");
  roots->add_option("--poly-file", roots_src.file, "File holding the coefficient line");

  // analytic
  auto* analytic = app.add_subcommand("analytic", "Minimize a catalog analytic function on [-1, 1]");
  std::string fn_name;
  double eps = 1e-3, walk_step = 1e-4;
  analytic->add_option("--fn", fn_name, "exp | sin3x | rational")->required();
  analytic->add_option("--eps", eps, "Certified accuracy")->capture_default_str();
  analytic->add_option("--walk-step", walk_step, "LGA precision step on the surrogate")->capture_default_str();

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  if (args.empty()) argv.push_back("leapgrad");
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (minimize->parsed()) {
      const Polynomial p = detail::load_polynomial(min_src);
      const Interval iv{a, b};
      iv.validate();
      if (!(h > 0.0)) throw std::invalid_argument("--h must be positive");
      const auto f = [&p](double x) { return horner_eval(p, x); };
      MinResult r;
      if (algo == "lga") {
        r = lga_poly_min(p, iv, h);
      } else if (algo == "generic") {
        r = lga_generic(f, iv, LgaConfig{h});
      } else if (algo == "bfs") {
        r = bfs_min(f, iv, bfs_n > 0 ? bfs_n : static_cast<std::size_t>(std::max(1.0, std::ceil((b - a) / h))));
      } else if (algo == "zdm") {
        r = zdm_min(p, iv);
      } else {
        const double l = std::max(estimate_lipschitz(f, iv, 10000), 1e-12);
        r = psm_min(f, l, iv, psm_tol, psm_max_iter);
        if (!r.converged) err << "warning: PSM stopped at the iteration cap before reaching the tolerance\n";
      }
      detail::print_min(out, r);
      return kExitOk;
    }

    if (bench->parsed()) {
      cfg.competitor = parse_competitor(competitor);
      cfg.roots = parse_root_model(roots_model);
      if (bfs_points > 0) cfg.bfs_points = bfs_points;
      if (seed_flag)
        cfg.seed = *seed_flag;
      else if (auto env = detail::seed_from_env())
        cfg.seed = *env;
      cfg.validate();
      const ExperimentReport report = run_experiment(cfg);
      write_results(report.rows, out_path);
      if (!plot_path.empty()) emit_plot_data(report.rows, cfg.competitor, plot_path);
      if (!trials_path.empty()) write_trial_records(report.records, trials_path);
      out << std::left << std::setw(8) << "degree" << std::right << std::setw(16) << "t_lga_us" << std::setw(16)
          << (std::string("t_") + to_string(algo_of(cfg.competitor)) + "_us") << std::setw(10) << "excluded" << '\n'
          << std::fixed << std::setprecision(3);
      for (const auto& row : report.rows)
        out << std::left << std::setw(8) << row.degree << std::right << std::setw(16) << row.t_lga_us << std::setw(16)
            << row.t_competitor_us << std::setw(10) << row.excluded << '\n';
      return kExitOk;
    }

    if (roots->parsed()) {
      const Polynomial p = trim(detail::load_polynomial(roots_src));
      if (p.degree() < 1) throw std::invalid_argument("roots needs a polynomial of degree >= 1");
      out << std::setprecision(15);
      for (const Complex& r : laguerre_roots(p))
        out << detail::clean_zero(r.real()) << ' ' << detail::clean_zero(r.imag()) << '\n';
      return kExitOk;
    }

    if (analytic->parsed()) {
      const CatalogEntry* entry = find_catalog_entry(fn_name);
      if (!entry) {
        err << "unknown function '" << fn_name << "'; catalog:";
        for (const auto& e : analytic_catalog()) err << ' ' << e.name;
        err << '\n';
        return kExitUsage;
      }
      const AnalyticResult r = analytic_min(entry->f, entry->bound, eps, walk_step);
      out << std::fixed << std::setprecision(6) << "x=" << detail::clean_zero(r.min.x_arg) << '\n'
          << "value=" << detail::clean_zero(r.min.value) << '\n'
          << "order=" << r.surrogate.order << '\n'
          << std::defaultfloat << std::setprecision(6) << "step=" << r.surrogate.step << '\n'
          << "epsilon=" << r.epsilon << '\n';
      return kExitOk;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace leapgrad::cli
