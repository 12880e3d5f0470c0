#pragma once

// Timing experiments: random root-sampled polynomials, LGA against one
// competitor per run, per-degree mean times.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <locale>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "competitors.hpp"
#include "lga.hpp"
#include "polynomial.hpp"

namespace leapgrad {

enum class Competitor { bfs, zdm, psm };
enum class Algo { lga, bfs, zdm, psm };
enum class RootModel { complex, real };

inline Algo algo_of(Competitor c) {
  switch (c) {
    case Competitor::bfs: return Algo::bfs;
    case Competitor::zdm: return Algo::zdm;
    case Competitor::psm: return Algo::psm;
  }
  return Algo::bfs;
}

inline const char* to_string(Algo a) {
  switch (a) {
    case Algo::lga: return "lga";
    case Algo::bfs: return "bfs";
    case Algo::zdm: return "zdm";
    case Algo::psm: return "psm";
  }
  return "?";
}

inline Competitor parse_competitor(const std::string& s) {
  if (s == "bfs") return Competitor::bfs;
  if (s == "zdm") return Competitor::zdm;
  if (s == "psm") return Competitor::psm;
  throw std::invalid_argument("unknown competitor '" + s + "' (expected bfs, zdm or psm)");
}

inline RootModel parse_root_model(const std::string& s) {
  if (s == "complex") return RootModel::complex;
  if (s == "real") return RootModel::real;
  throw std::invalid_argument("unknown root model '" + s + "' (expected complex or real)");
}

struct ExperimentConfig {
  std::vector<int> degrees;
  int trials = 500;
  double b_param = 1.0;
  double h = 1e-4;
  std::uint64_t seed = 1;
  Competitor competitor = Competitor::bfs;
  std::optional<std::size_t> bfs_points;  ///< default ceil(2 / h)
  RootModel roots = RootModel::complex;
  std::size_t lipschitz_points = 10000;
  double psm_tol = 1e-6;
  std::size_t psm_max_iter = 50000000;

  std::size_t effective_bfs_points() const {
    return bfs_points ? *bfs_points : static_cast<std::size_t>(std::ceil(2.0 / h));
  }

  void validate() const {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (!(b_param > -1.0 && b_param <= 1.0)) throw std::invalid_argument("b parameter must lie in (-1, 1]");
    if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("h must be positive");
    if (degrees.empty()) throw std::invalid_argument("at least one degree is required");
    for (int d : degrees)
      if (d < 1) throw std::invalid_argument("every degree must be >= 1");
    if (bfs_points && *bfs_points < 1) throw std::invalid_argument("BFS needs at least one interval");
    if (lipschitz_points < 2) throw std::invalid_argument("Lipschitz grid needs >= 2 points");
    if (!(psm_tol > 0.0)) throw std::invalid_argument("PSM tolerance must be positive");
  }
};

struct TrialRecord {
  int degree = 0;
  int trial = 0;
  Algo algo = Algo::lga;
  double elapsed_us = 0.0;
  double x_arg = 0.0;
  double value = 0.0;
  bool flagged = false;
};

struct ExperimentRow {
  int degree = 0;
  double t_lga_us = 0.0;
  double t_competitor_us = 0.0;
  std::size_t excluded = 0;
};

struct ExperimentReport {
  std::vector<ExperimentRow> rows;
  std::vector<TrialRecord> records;
};

using Rng = std::mt19937_64;

/// Independent stream per (seed, degree, trial) so the polynomial sequence does not
/// depend on the order trials are run in.
inline Rng trial_stream(std::uint64_t seed, int degree, int trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(degree), static_cast<std::uint32_t>(trial)};
  return Rng(seq);
}

namespace detail {

/// Uniform on [0, 1) from the top 53 bits; identical on every standard library.
inline double unit_uniform(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace detail

/// Monic degree-n polynomial with roots in [-1, b] x [-1, 1]. Complex roots come in
/// conjugate pairs (imaginary part drawn from (0, 1] and mirrored); odd degree adds one
/// real root. RootModel::real draws all n roots on [-1, b].
inline Polynomial random_polynomial(int n, double b_param, Rng& rng, RootModel model = RootModel::complex) {
  if (n < 1) throw std::invalid_argument("degree must be >= 1");
  if (!(b_param > -1.0 && b_param <= 1.0)) throw std::invalid_argument("b parameter must lie in (-1, 1]");
  const double width = b_param + 1.0;
  std::vector<Complex> roots;
  roots.reserve(static_cast<std::size_t>(n));
  if (model == RootModel::real) {
    for (int i = 0; i < n; ++i) roots.emplace_back(-1.0 + width * detail::unit_uniform(rng), 0.0);
  } else {
    for (int i = 0; i < n / 2; ++i) {
      const double re = -1.0 + width * detail::unit_uniform(rng);
      const double im = 1.0 - detail::unit_uniform(rng);
      roots.emplace_back(re, im);
      roots.emplace_back(re, -im);
    }
    if (n % 2 == 1) roots.emplace_back(-1.0 + width * detail::unit_uniform(rng), 0.0);
  }
  return poly_from_roots(roots);
}

namespace detail {

template <class Fn>
std::pair<MinResult, double> timed(Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  MinResult r = fn();
  const auto t1 = std::chrono::steady_clock::now();
  return {r, std::chrono::duration<double, std::micro>(t1 - t0).count()};
}

}  // namespace detail

/// Times LGA and the configured competitor on [-1, 1]. PSM timing includes the
/// Lipschitz estimate. A failing or unconverged competitor yields a flagged record.
inline std::pair<TrialRecord, TrialRecord> run_trial(const Polynomial& p, const ExperimentConfig& cfg, int trial = 0) {
  const Interval iv{-1.0, 1.0};
  const int degree = static_cast<int>(p.degree());

  TrialRecord lga_rec{degree, trial, Algo::lga};
  const auto [lr, lt] = detail::timed([&] { return lga_poly_min(p, iv, cfg.h); });
  lga_rec.elapsed_us = lt;
  lga_rec.x_arg = lr.x_arg;
  lga_rec.value = lr.value;

  TrialRecord comp{degree, trial, algo_of(cfg.competitor)};
  const auto f = [&p](double x) { return horner_eval(p, x); };
  try {
    const auto [cr, ct] = detail::timed([&]() -> MinResult {
      switch (cfg.competitor) {
        case Competitor::bfs: return bfs_min(f, iv, cfg.effective_bfs_points());
        case Competitor::zdm: return zdm_min(p, iv);
        case Competitor::psm: {
          const double l = std::max(estimate_lipschitz(f, iv, cfg.lipschitz_points), 1e-12);
          return psm_min(f, l, iv, cfg.psm_tol, cfg.psm_max_iter);
        }
      }
      throw std::logic_error("unhandled competitor");
    });
    comp.elapsed_us = ct;
    comp.x_arg = cr.x_arg;
    comp.value = cr.value;
    comp.flagged = !cr.converged;
  } catch (const NumericalError&) {
    comp.flagged = true;
    comp.x_arg = comp.value = std::nan("");
  }
  return {lga_rec, comp};
}

/// Runs cfg.trials fresh polynomials per degree. Trials with a flagged record are
/// left out of both means and counted in `excluded`.
inline ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentReport report;
  for (int degree : cfg.degrees) {
    double sum_l = 0.0, sum_c = 0.0;
    std::size_t used = 0, excluded = 0;
    for (int t = 0; t < cfg.trials; ++t) {
      Rng rng = trial_stream(cfg.seed, degree, t);
      const Polynomial p = random_polynomial(degree, cfg.b_param, rng, cfg.roots);
      auto [l, c] = run_trial(p, cfg, t);
      if (l.flagged || c.flagged) {
        ++excluded;
      } else {
        sum_l += l.elapsed_us;
        sum_c += c.elapsed_us;
        ++used;
      }
      report.records.push_back(l);
      report.records.push_back(c);
    }
    const double denom = used > 0 ? static_cast<double>(used) : 1.0;
    report.rows.push_back({degree, used ? sum_l / denom : 0.0, used ? sum_c / denom : 0.0, excluded});
  }
  return report;
}

// ---------------------------------------------------------------------------
// Output files

inline constexpr const char* kResultsHeader = "degree,t_lga_us,t_competitor_us,excluded";
inline constexpr const char* kTrialsHeader = "degree,trial,algo,elapsed_us,x_arg,value,flagged";

namespace detail {

inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out.imbue(std::locale::classic());
  return out;
}

inline void close_output(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace detail

inline void write_results(const std::vector<ExperimentRow>& rows, std::ostream& out) {
  out << kResultsHeader << '\n' << std::fixed << std::setprecision(3);
  for (const auto& r : rows) out << r.degree << ',' << r.t_lga_us << ',' << r.t_competitor_us << ',' << r.excluded << '\n';
}

inline void write_results(const std::vector<ExperimentRow>& rows, const std::string& path) {
  auto out = detail::open_output(path);
  write_results(rows, out);
  detail::close_output(out, path);
}

inline std::vector<ExperimentRow> read_results(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::string line;
  if (!std::getline(in, line) || line != kResultsHeader)
    throw std::runtime_error("'" + path + "' does not start with the results header");
  std::vector<ExperimentRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    fields.imbue(std::locale::classic());
    ExperimentRow r;
    char c1 = 0, c2 = 0, c3 = 0;
    if (!(fields >> r.degree >> c1 >> r.t_lga_us >> c2 >> r.t_competitor_us >> c3 >> r.excluded) || c1 != ',' ||
        c2 != ',' || c3 != ',')
      throw std::runtime_error("malformed row in '" + path + "': " + line);
    rows.push_back(r);
  }
  return rows;
}

inline void write_trial_records(const std::vector<TrialRecord>& records, const std::string& path) {
  auto out = detail::open_output(path);
  out << kTrialsHeader << '\n';
  for (const auto& r : records) {
    out << r.degree << ',' << r.trial << ',' << to_string(r.algo) << ',' << std::fixed << std::setprecision(3)
        << r.elapsed_us << ',' << std::scientific << std::setprecision(17) << r.x_arg << ',' << r.value << ','
        << (r.flagged ? 1 : 0) << '\n';
  }
  detail::close_output(out, path);
}

/// Gnuplot-style data: one "# <algo>" block of "degree mean_us" lines per algorithm.
inline void emit_plot_data(const std::vector<ExperimentRow>& rows, Competitor competitor, const std::string& path) {
  auto out = detail::open_output(path);
  out << std::fixed << std::setprecision(3);
  out << "# lga\n";
  for (const auto& r : rows) out << r.degree << ' ' << r.t_lga_us << '\n';
  out << "\n\n# " << to_string(algo_of(competitor)) << '\n';
  for (const auto& r : rows) out << r.degree << ' ' << r.t_competitor_us << '\n';
  detail::close_output(out, path);
}

}  // namespace leapgrad
