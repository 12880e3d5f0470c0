#pragma once

// Baseline global minimizers: brute-force grid search, the zero-derivative
// method and the Piyavskii-Shubert lower-envelope method.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "lga.hpp"
#include "polynomial.hpp"

namespace leapgrad {

inline constexpr double kRealRootTol = 1e-8;

/// Minimum over a + (b - a) j / N, j = 0..N. First index wins ties.
template <class F>
MinResult bfs_min(F&& f, const Interval& iv, std::size_t n) {
  iv.validate();
  if (n < 1) throw std::invalid_argument("BFS needs N >= 1");
  const double width = iv.b - iv.a;
  MinResult best{iv.a, f(iv.a), 0, 1, true};
  for (std::size_t j = 1; j <= n; ++j) {
    const double x = iv.a + width * static_cast<double>(j) / static_cast<double>(n);
    const double v = f(x);
    if (v < best.value) {
      best.value = v;
      best.x_arg = x;
    }
  }
  best.evals = n + 1;
  return best;
}

/// Critical points from Laguerre roots of p' (real within kRealRootTol, inside [a, b])
/// plus both endpoints.
inline MinResult zdm_min(const Polynomial& poly, const Interval& iv, const LaguerreOptions& opt = {}) {
  iv.validate();
  const Polynomial p = trim(poly);
  if (p.degree() < 1) throw std::invalid_argument("ZDM needs degree >= 1");
  std::vector<double> candidates{iv.a};
  const Polynomial dp = derivative(p);
  if (dp.degree() >= 1) {
    for (const Complex& r : laguerre_roots(dp, opt))
      if (std::abs(r.imag()) <= kRealRootTol && r.real() >= iv.a && r.real() <= iv.b) candidates.push_back(r.real());
  }
  candidates.push_back(iv.b);
  MinResult best{iv.a, horner_eval(p, iv.a), 0, 0, true};
  for (double x : candidates) {
    const double v = horner_eval(p, x);
    if (v < best.value) {
      best.value = v;
      best.x_arg = x;
    }
  }
  best.evals = candidates.size();
  return best;
}

/// 1.1 times the steepest slope between neighbours of an N-point uniform grid.
template <class F>
double estimate_lipschitz(F&& f, const Interval& iv, std::size_t n) {
  iv.validate();
  if (n < 2) throw std::invalid_argument("Lipschitz estimate needs N >= 2");
  const double width = iv.b - iv.a;
  if (width == 0.0) return 0.0;
  double prev_x = iv.a, prev_v = f(iv.a), slope = 0.0;
  for (std::size_t j = 1; j < n; ++j) {
    const double x = iv.a + width * static_cast<double>(j) / static_cast<double>(n - 1);
    const double v = f(x);
    slope = std::max(slope, std::abs(v - prev_v) / (x - prev_x));
    prev_x = x;
    prev_v = v;
  }
  return 1.1 * slope;
}

/// Piyavskii-Shubert state: the samples taken so far, the sawtooth lower envelope they
/// induce with slope L, and a queue of envelope teeth ordered by their minima.
///
/// With a positive `resolution` a tooth whose minimum already lies within resolution of
/// the best sample is never queued: best only decreases, so it can never be what keeps
/// the gap above that resolution.
template <class F>
class PiyavskiiShubert {
 public:
  struct Sample {
    double x;
    double value;
  };

  PiyavskiiShubert(F f, double lipschitz, const Interval& iv, double resolution = 0.0, bool record_samples = true)
      : f_(std::move(f)), l_(lipschitz), resolution_(resolution), record_(record_samples) {
    iv.validate();
    if (!(lipschitz > 0.0) || !std::isfinite(lipschitz)) throw std::invalid_argument("Lipschitz constant must be positive");
    if (!(resolution >= 0.0)) throw std::invalid_argument("resolution must be >= 0");
    const double fa = sample(iv.a);
    best_ = {iv.a, fa};
    if (iv.b > iv.a) {
      const double fb = sample(iv.b);
      if (fb < best_.value) best_ = {iv.b, fb};
      push_tooth({iv.a, fa}, {iv.b, fb});
    }
  }

  const Sample& best() const noexcept { return best_; }
  double lipschitz() const noexcept { return l_; }
  std::size_t evals() const noexcept { return evals_; }
  /// Empty unless constructed with record_samples.
  const std::vector<Sample>& samples() const noexcept { return samples_; }

  /// Lowest queued tooth; the best value once nothing is left to refine.
  double envelope_minimum() const { return teeth_.empty() ? best_.value : teeth_.front().low; }

  double gap() const { return best_.value - envelope_minimum(); }

  /// Phi(x) = max_i f_i - L |x - x_i| over the recorded samples.
  double envelope(double x) const {
    double v = -std::numeric_limits<double>::infinity();
    for (const Sample& s : samples_) v = std::max(v, s.value - l_ * std::abs(x - s.x));
    return v;
  }

  /// Samples f at the envelope's argmin. Returns false when there is nothing left to refine.
  bool step() {
    if (teeth_.empty()) return false;
    std::pop_heap(teeth_.begin(), teeth_.end());
    const Tooth t = teeth_.back();
    teeth_.pop_back();
    const double x = argmin(t);
    const double v = sample(x);
    if (v < best_.value) best_ = {x, v};
    push_tooth({t.xl, t.fl}, {x, v});
    push_tooth({x, v}, {t.xr, t.fr});
    return true;
  }

 private:
  // 40 bytes; the argmin is recomputed on pop rather than stored.
  struct Tooth {
    double low;
    double xl, fl, xr, fr;
    bool operator<(const Tooth& o) const { return low > o.low; }
  };

  double argmin(const Tooth& t) const {
    return std::clamp(0.5 * (t.xl + t.xr) + (t.fl - t.fr) / (2.0 * l_), t.xl, t.xr);
  }

  double sample(double x) {
    const double v = f_(x);
    if (!std::isfinite(v)) throw NumericalError("objective is not finite");
    ++evals_;
    if (record_) samples_.push_back({x, v});
    return v;
  }

  void push_tooth(const Sample& l, const Sample& r) {
    if (!(r.x > l.x)) return;
    const Tooth t{0.5 * (l.value + r.value) - 0.5 * l_ * (r.x - l.x), l.x, l.value, r.x, r.value};
    const double x = argmin(t);
    if (x == l.x || x == r.x) return;  // interval exhausted at double resolution
    if (resolution_ > 0.0 && t.low >= best_.value - resolution_) return;
    teeth_.push_back(t);
    std::push_heap(teeth_.begin(), teeth_.end());
  }

  F f_;
  double l_;
  double resolution_;
  bool record_;
  std::size_t evals_ = 0;
  Sample best_{};
  std::vector<Sample> samples_;
  std::vector<Tooth> teeth_;  // max-heap on operator<, i.e. lowest tooth first
};

/// Classic Piyavskii-Shubert with a global Lipschitz constant. Stops once the best
/// sample is within tol of the envelope minimum; otherwise flags the result unconverged.
template <class F>
MinResult psm_min(F f, double lipschitz, const Interval& iv, double tol, std::size_t max_iter) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  PiyavskiiShubert<F> psm(std::move(f), lipschitz, iv, tol, false);
  bool converged = false;
  for (std::size_t it = 0; it < max_iter; ++it) {
    if (psm.gap() <= tol || !psm.step()) {
      converged = true;
      break;
    }
  }
  if (!converged) converged = psm.gap() <= tol;
  return {psm.best().x, psm.best().value, 0, psm.evals(), converged};
}

}  // namespace leapgrad
