#pragma once

// Leap Gradient Algorithm: descend on an h-grid until the function rises, then
// leap to the minimizer of the chord slope (f(x) - f(x_k)) / (x - x_k) over
// [x_k, b] if that point is strictly lower. The chord-slope subproblem is solved
// by the same procedure, recursively.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "polynomial.hpp"

namespace leapgrad {

struct Interval {
  double a = -1.0;
  double b = 1.0;

  void validate() const {
    if (!std::isfinite(a) || !std::isfinite(b)) throw std::invalid_argument("interval bounds must be finite");
    if (a > b) throw std::invalid_argument("interval requires a <= b");
  }
};

struct MinResult {
  double x_arg = 0.0;
  double value = 0.0;
  std::size_t leaps = 0;
  std::size_t evals = 0;
  bool converged = true;
};

struct LgaConfig {
  double h = 1e-4;
  int max_depth = 8;
  int fallback_grid = 1024;

  void validate() const {
    if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("precision step h must be positive");
    if (max_depth < 1) throw std::invalid_argument("max_depth must be >= 1");
    if (fallback_grid < 2) throw std::invalid_argument("fallback_grid must be >= 2");
  }
};

namespace detail {

inline void check_walk_length(const Interval& iv, double h) {
  if ((iv.b - iv.a) / h > 9.0e15) throw std::invalid_argument("(b - a) / h exceeds the integer grid range");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Polynomial form

/// Exact minimum of a polynomial of degree <= 2 on [a, b].
/// Comparisons avoid p_0 so adding a constant never changes the chosen point.
inline MinResult closed_form_min_deg_le2(const Polynomial& poly, const Interval& iv) {
  const Polynomial p = trim(poly);
  if (p.degree() > 2) throw std::invalid_argument("closed form requires degree <= 2");
  const double a = iv.a, b = iv.b;
  double x = a;
  switch (p.degree()) {
    case 0:
      x = a;
      break;
    case 1:
      x = p[1] >= 0.0 ? a : b;
      break;
    default: {
      const double p1 = p[1], p2 = p[2];
      if (p2 > 0.0)
        x = std::clamp(-p1 / (2.0 * p2), a, b);
      else  // p(a) <= p(b)  <=>  p1 + p2 (a + b) >= 0
        x = p1 + p2 * (a + b) >= 0.0 ? a : b;
    }
  }
  return {x, horner_eval(p, x), 0, 1, true};
}

/// First grid point start + k h whose right neighbour is higher; b once the grid reaches b.
inline double descend_poly(const Polynomial& p, double start, double b, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("precision step h must be positive");
  const auto c = p.coeffs();
  if (c.size() == 1) return start >= b ? b : start;
  for (std::size_t k = 0;; ++k) {
    const double x = start + static_cast<double>(k) * h;
    if (x >= b) return b;
    if (quotient_eval(c, x, x + h) > 0.0) return x;
  }
}

/// Sign changes of p'' sampled on `grid` uniform points of [lo, hi]. Exact zeros are skipped.
inline int count_second_derivative_sign_changes(const Polynomial& p, double lo, double hi, int grid) {
  if (!(lo < hi) || grid < 2) throw std::invalid_argument("need lo < hi and grid >= 2");
  const Polynomial d2 = derivative(derivative(p));
  int changes = 0;
  int prev = 0;
  for (int i = 0; i < grid; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid - 1);
    const double v = horner_eval(d2, x);
    const int s = (v > 0.0) - (v < 0.0);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

/// Top-level events of one lga_poly_min run.
struct LeapEvent {
  double x_before;  ///< grid point preceding x_from on the walk (x_from if the walk did not move)
  double x_from;
  double x_to;
};

struct LgaTrace {
  std::vector<double> walk_stops;
  std::vector<LeapEvent> leaps;
  std::size_t jump_counter = 0;  ///< weighted counter: +1 for a leap from a, +2 otherwise
};

namespace detail {

class PolyLga {
 public:
  explicit PolyLga(double h) : h_(h) {}

  std::size_t evals() const noexcept { return evals_; }

  MinResult minimize(const Polynomial& p, double a, double b, LgaTrace* trace) {
    const std::size_t n = p.degree();
    if (n <= 2) {
      auto r = closed_form_min_deg_le2(p, {a, b});
      evals_ += r.evals;
      return r;
    }
    const auto c = p.coeffs();
    const std::size_t cap = n - 2;
    std::size_t jumps = 0;
    std::size_t leaps = 0;
    double start = a;

    const auto finish = [&](double x) { return MinResult{x, value(c, x), leaps, 0, true}; };

    for (;;) {
      // Walk x = start + k h while the quotient at x is non-positive at x + h.
      double xk = start;
      double prev = start;
      bool reached_end = false;
      for (std::size_t k = 0;; ++k) {
        const double x = start + static_cast<double>(k) * h_;
        if (x >= b) {
          reached_end = true;
          break;
        }
        ++evals_;
        if (quotient_eval(c, x, x + h_) > 0.0) {
          xk = x;
          prev = k > 0 ? start + static_cast<double>(k - 1) * h_ : x;
          break;
        }
      }
      if (reached_end) {
        if (trace) trace->walk_stops.push_back(b);
        return finish(b);
      }
      if (trace) trace->walk_stops.push_back(xk);
      if (jumps >= cap) return finish(xk);

      const Polynomial q = horner_quotient(p, xk);
      const MinResult sub = minimize(q, xk, b, nullptr);
      if (!(sub.x_arg > xk && sub.value < 0.0)) return finish(xk);

      jumps += xk == a ? 1 : 2;
      ++leaps;
      if (trace) {
        trace->leaps.push_back({prev, xk, sub.x_arg});
        trace->jump_counter = jumps;
      }
      start = sub.x_arg;
    }
  }

 private:
  double value(std::span<const double> c, double x) {
    ++evals_;
    return horner_eval<double>(c, x);
  }

  double h_;
  std::size_t evals_ = 0;
};

}  // namespace detail

/// Global minimum of p on [a, b] to precision h. Degree <= 2 is solved in closed form;
/// higher degrees leap at most deg - 2 weighted times.
inline MinResult lga_poly_min(const Polynomial& p, const Interval& iv, double h, LgaTrace* trace = nullptr) {
  iv.validate();
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("precision step h must be positive");
  detail::check_walk_length(iv, h);
  detail::PolyLga run(h);
  MinResult r = run.minimize(trim(p), iv.a, iv.b, trace);
  r.evals = run.evals();
  return r;
}

// ---------------------------------------------------------------------------
// Generic form

namespace detail {

using ScalarFn = std::function<double(double)>;

class GenericLga {
 public:
  GenericLga(const ScalarFn& f, const LgaConfig& cfg) : f_(f), cfg_(cfg) {}

  std::size_t evals() const noexcept { return evals_; }
  std::size_t leaps() const noexcept { return leaps_; }

  double eval_top(double x) {
    ++evals_;
    const double v = f_(x);
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "objective is not finite at x=" << x;
      throw NumericalError(msg.str());
    }
    return v;
  }

  /// Returns (x, g(x)) for the minimum of g on [a, b]; depth 0 is the objective itself.
  std::pair<double, double> minimize(const ScalarFn& g, double a, double b, int depth) {
    if (depth >= cfg_.max_depth) return grid_scan(g, a, b);
    const double h = cfg_.h;
    double start = a;
    for (;;) {
      double xk = b, gk = 0.0;
      bool reached_end = true;
      double cur = start >= b ? 0.0 : g(start);
      for (std::size_t k = 0;; ++k) {
        const double x = start + static_cast<double>(k) * h;
        if (x >= b) break;
        const double next = g(std::min(x + h, b));
        if (next > cur) {
          xk = x;
          gk = cur;
          reached_end = false;
          break;
        }
        cur = next;
      }
      if (reached_end) return {b, g(b)};

      const double step = std::min(h, b - xk);
      const double g_right = g(xk + step);
      const ScalarFn quotient = [&g, xk, gk, g_right, step](double x) {
        if (x == xk) return (g_right - gk) / step;
        return (g(x) - gk) / (x - xk);
      };
      const auto [xs, qs] = minimize(quotient, xk, b, depth + 1);
      (void)qs;
      if (!(xs > xk)) return {xk, gk};
      const double gs = g(xs);
      if (!(gs < gk)) return {xk, gk};
      if (depth == 0) ++leaps_;
      start = xs;
    }
  }

 private:
  std::pair<double, double> grid_scan(const ScalarFn& g, double a, double b) {
    const int n = cfg_.fallback_grid;
    double best_x = a, best_v = g(a);
    for (int j = 1; j < n; ++j) {
      const double x = a + (b - a) * static_cast<double>(j) / static_cast<double>(n - 1);
      const double v = g(x);
      if (v < best_v) {
        best_v = v;
        best_x = x;
      }
    }
    return {best_x, best_v};
  }

  const ScalarFn& f_;
  LgaConfig cfg_;
  std::size_t evals_ = 0;
  std::size_t leaps_ = 0;
};

}  // namespace detail

/// LGA for a black-box objective. Chord-slope subproblems recurse up to
/// cfg.max_depth levels, below which a uniform grid scan of cfg.fallback_grid
/// points is used. The quotient at its own base point is the forward difference.
template <class F>
MinResult lga_generic(F&& f, const Interval& iv, const LgaConfig& cfg = {}) {
  iv.validate();
  cfg.validate();
  detail::check_walk_length(iv, cfg.h);
  const detail::ScalarFn objective = [&f](double x) { return static_cast<double>(f(x)); };
  detail::GenericLga run(objective, cfg);
  const detail::ScalarFn top = [&run](double x) { return run.eval_top(x); };
  const auto [x, v] = run.minimize(top, iv.a, iv.b, 0);
  return {x, v, run.leaps(), run.evals(), true};
}

}  // namespace leapgrad
