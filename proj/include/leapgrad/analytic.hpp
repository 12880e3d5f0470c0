#pragma once

// Global minimization of real analytic functions on [-1, 1] through a
// polynomial surrogate built from iterated central differences at 0:
//   P(x) = sum_{j<=n} x^j / j! * (D_h)^j f(0),  D_h f(x) = (f(x+h) - f(x-h)) / 2h.

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <variant>
#include <vector>

#include "lga.hpp"
#include "polynomial.hpp"

namespace leapgrad {

inline constexpr int kMaxSurrogateOrder = 64;
inline constexpr double kMinDifferenceStep = 1e-6;

/// B(k) >= max over [-1, 1] of |f^(k)|.
struct DerivativeBound {
  std::function<double(int)> bound;
};

/// R(n) >= max over [-1, 1] of |f(x) - (degree-n Taylor polynomial at 0)(x)|.
/// Needed when derivative maxima grow like k! (poles near the interval), where
/// B(n+1)/(n+1)! never falls below any useful epsilon.
struct RemainderBound {
  std::function<double(int)> bound;
};

using OrderBound = std::variant<DerivativeBound, RemainderBound>;

struct Surrogate {
  Polynomial poly;
  int order = 0;
  double step = 0.0;
  double epsilon = 0.0;
};

template <class F>
double central_diff(F&& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

namespace detail {

inline double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(r);
}

inline double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= static_cast<double>(i);
  return r;
}

}  // namespace detail

/// (D_h)^j f(x) = sum_i (-1)^i C(j,i) f(x + (j - 2i) h) / (2h)^j, using j + 1 evaluations.
template <class F>
double iterated_central_diff(F&& f, double x, double h, int j) {
  if (j < 0) throw std::invalid_argument("difference order must be >= 0");
  if (!(h > 0.0)) throw std::invalid_argument("difference step must be positive");
  double sum = 0.0;
  for (int i = 0; i <= j; ++i) {
    const double at = x + static_cast<double>(j - 2 * i) * h;
    const double v = f(at);
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "difference stencil left the domain of f at x=" << at;
      throw NumericalError(msg.str());
    }
    const double w = detail::binomial(j, i);
    sum += (i % 2 == 0 ? w : -w) * v;
  }
  return sum / std::pow(2.0 * h, j);
}

template <class F>
Surrogate build_surrogate(F&& f, int n, double h, double eps) {
  if (n < 0) throw std::invalid_argument("surrogate order must be >= 0");
  if (!(h > 0.0)) throw std::invalid_argument("difference step must be positive");
  if (!(eps > 0.0)) throw std::invalid_argument("epsilon must be positive");
  std::vector<double> c(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) c[static_cast<std::size_t>(j)] = iterated_central_diff(f, 0.0, h, j) / detail::factorial(j);
  return {Polynomial(std::move(c)), n, h, eps};
}

/// Smallest n with B(n+1)/(n+1)! <= eps/2, i.e. the Taylor remainder on [-1, 1] is within eps/2.
inline int choose_order(const DerivativeBound& b, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("epsilon must be positive");
  for (int n = 0; n <= kMaxSurrogateOrder; ++n) {
    const double bk = b.bound(n + 1);
    if (!std::isfinite(bk) || bk < 0.0) throw std::invalid_argument("derivative bound must be finite and >= 0");
    if (bk / detail::factorial(n + 1) <= eps / 2.0) return n;
  }
  throw NumericalError("derivative bounds grow too fast");
}

inline int choose_order(const RemainderBound& r, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("epsilon must be positive");
  for (int n = 0; n <= kMaxSurrogateOrder; ++n) {
    const double rn = r.bound(n);
    if (!std::isfinite(rn) || rn < 0.0) throw std::invalid_argument("remainder bound must be finite and >= 0");
    if (rn <= eps / 2.0) return n;
  }
  throw NumericalError("remainder bounds decay too slowly");
}

inline int choose_order(const OrderBound& b, double eps) {
  return std::visit([eps](const auto& bound) { return choose_order(bound, eps); }, b);
}

/// What must stop changing between consecutive halvings of h.
enum class StepCriterion {
  /// Minimum of the surrogate over [-1, 1] (dense grid) moves by less than eps/4.
  surrogate_minimum,
  /// Every surrogate coefficient moves by less than eps / (4 (n + 1)).
  coefficients,
};

namespace detail {

inline constexpr int kStepGrid = 4097;

inline double grid_minimum(const Polynomial& p) {
  double best = INFINITY;
  for (int i = 0; i < kStepGrid; ++i) {
    const double x = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(kStepGrid - 1);
    best = std::min(best, horner_eval(p, x));
  }
  return best;
}

}  // namespace detail

/// Halves h from 1/(4n+4) until the surrogate stabilizes between h and h/2; returns
/// the larger step of the first stable pair.
template <class F>
double choose_step(F&& f, int n, double eps, StepCriterion criterion = StepCriterion::surrogate_minimum) {
  if (n < 0) throw std::invalid_argument("surrogate order must be >= 0");
  if (!(eps > 0.0)) throw std::invalid_argument("epsilon must be positive");
  double h = 1.0 / (4.0 * n + 4.0);
  Surrogate cur = build_surrogate(f, n, h, eps);
  double cur_min = criterion == StepCriterion::surrogate_minimum ? detail::grid_minimum(cur.poly) : 0.0;
  while (h / 2.0 >= kMinDifferenceStep) {
    Surrogate next = build_surrogate(f, n, h / 2.0, eps);
    bool stable = false;
    if (criterion == StepCriterion::coefficients) {
      double diff = 0.0;
      for (int j = 0; j <= n; ++j)
        diff = std::max(diff, std::abs(cur.poly[static_cast<std::size_t>(j)] - next.poly[static_cast<std::size_t>(j)]));
      stable = diff < eps / (4.0 * (n + 1));
    } else {
      const double next_min = detail::grid_minimum(next.poly);
      stable = std::abs(cur_min - next_min) < eps / 4.0;
      cur_min = next_min;
    }
    if (stable) return h;
    h /= 2.0;
    cur = std::move(next);
  }
  throw NumericalError("step selection failed");
}

struct AnalyticResult {
  MinResult min;  ///< x* and the surrogate value P(x*)
  Surrogate surrogate;
  double epsilon = 0.0;
};

/// Order from the bound, step by halving, then LGA on the surrogate over [-1, 1].
/// The true minimum of f lies within epsilon of min.value.
template <class F>
AnalyticResult analytic_min(F&& f, const OrderBound& bound, double eps, double walk_step,
                            StepCriterion criterion = StepCriterion::surrogate_minimum) {
  if (!(eps > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!(walk_step > 0.0)) throw std::invalid_argument("walk step must be positive");
  const int n = choose_order(bound, eps);
  const double h = choose_step(f, n, eps, criterion);
  Surrogate s = build_surrogate(f, n, h, eps);
  MinResult m = lga_poly_min(s.poly, {-1.0, 1.0}, walk_step);
  return {m, std::move(s), eps};
}

}  // namespace leapgrad
