#pragma once

// Dense real polynomials in ascending coefficient order, Horner evaluation and
// deflation, and a Laguerre root finder.

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <istream>
#include <locale>
#include <ostream>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace leapgrad {

using Complex = std::complex<double>;

/// Raised when an algorithm cannot produce a trustworthy number
/// (non-finite objective values, root finder stalls, step selection failure).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RootFindingError : public NumericalError {
 public:
  RootFindingError(const std::string& what, std::vector<Complex> partial)
      : NumericalError(what), partial_(std::move(partial)) {}

  /// Roots accepted before the failure, in discovery order.
  const std::vector<Complex>& partial_roots() const noexcept { return partial_; }

 private:
  std::vector<Complex> partial_;
};

/// p(x) = c[0] + c[1] x + ... + c[n] x^n. Never empty.
class Polynomial {
 public:
  Polynomial() : coeffs_{0.0} {}

  explicit Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("polynomial needs at least one coefficient");
  }

  Polynomial(std::initializer_list<double> coeffs) : Polynomial(std::vector<double>(coeffs)) {}

  std::size_t degree() const noexcept { return coeffs_.size() - 1; }
  std::span<const double> coeffs() const noexcept { return coeffs_; }
  double operator[](std::size_t j) const { return coeffs_.at(j); }
  double leading() const noexcept { return coeffs_.back(); }

  bool operator==(const Polynomial&) const = default;

 private:
  std::vector<double> coeffs_;
};

/// Descending recurrence v <- v*x + p_j.
template <class T>
T horner_eval(std::span<const double> c, T x) {
  T v = c.back();
  for (std::size_t j = c.size() - 1; j-- > 0;) v = v * x + c[j];
  return v;
}

inline double horner_eval(const Polynomial& p, double x) { return horner_eval<double>(p.coeffs(), x); }

inline double eval_derivative(const Polynomial& p, double x) {
  const auto c = p.coeffs();
  double v = 0.0;
  for (std::size_t j = c.size() - 1; j > 0; --j) v = v * x + static_cast<double>(j) * c[j];
  return v;
}

inline Polynomial derivative(const Polynomial& p) {
  const auto c = p.coeffs();
  if (c.size() == 1) return Polynomial{0.0};
  std::vector<double> d(c.size() - 1);
  for (std::size_t j = 1; j < c.size(); ++j) d[j - 1] = static_cast<double>(j) * c[j];
  return Polynomial(std::move(d));
}

/// Drops zero leading coefficients, keeping at least one.
inline Polynomial trim(const Polynomial& p) {
  auto c = p.coeffs();
  std::size_t len = c.size();
  while (len > 1 && c[len - 1] == 0.0) --len;
  return Polynomial(std::vector<double>(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(len)));
}

/// Synthetic division: returns q with q(x)(x - xk) + p(xk) = p(x).
inline Polynomial horner_quotient(const Polynomial& p, double xk) {
  const auto c = p.coeffs();
  const std::size_t n = c.size() - 1;
  if (n == 0) throw std::invalid_argument("cannot deflate constant");
  std::vector<double> q(n);
  q[n - 1] = c[n];
  for (std::size_t j = n - 1; j >= 1; --j) q[j - 1] = xk * q[j] + c[j];
  return Polynomial(std::move(q));
}

/// Value at y of the quotient (p(x) - p(xk)) / (x - xk), without materializing it.
/// Equals (p(y) - p(xk)) / (y - xk) for y != xk, computed free of cancellation.
inline double quotient_eval(std::span<const double> c, double xk, double y) {
  const std::size_t n = c.size() - 1;
  double q = c[n];
  double v = q;
  for (std::size_t j = n - 1; j >= 1; --j) {
    q = xk * q + c[j];
    v = v * y + q;
  }
  return v;
}

// ---------------------------------------------------------------------------
// Text format: one line of whitespace-separated ascending coefficients.

inline Polynomial parse_polynomial(const std::string& text) {
  std::istringstream in(text);
  in.imbue(std::locale::classic());
  std::vector<double> c;
  std::string token;
  while (in >> token) {
    std::istringstream tok(token);
    tok.imbue(std::locale::classic());
    double v = 0.0;
    if (!(tok >> v) || !tok.eof() || !std::isfinite(v))
      throw std::invalid_argument("bad polynomial coefficient '" + token + "'");
    c.push_back(v);
  }
  if (c.empty()) throw std::invalid_argument("polynomial text has no coefficients");
  return Polynomial(std::move(c));
}

inline Polynomial read_polynomial(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("polynomial input is empty");
  return parse_polynomial(line);
}

inline std::string format_polynomial(const Polynomial& p) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out.precision(17);
  bool first = true;
  for (double v : p.coeffs()) {
    if (!first) out << ' ';
    out << v;
    first = false;
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Construction from roots

inline constexpr double kImagResidueTol = 1e-9;

/// Monic product of (x - r_i). Conjugate pairs are multiplied together first so
/// the running product stays real up to rounding; any imaginary residue above
/// kImagResidueTol means the root set was not closed under conjugation.
inline Polynomial poly_from_roots(std::span<const Complex> roots) {
  std::vector<Complex> ordered;
  ordered.reserve(roots.size());
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i] || roots[i].imag() <= 0.0) continue;
    used[i] = true;
    ordered.push_back(roots[i]);
    std::size_t best = roots.size();
    double best_d = INFINITY;
    for (std::size_t k = 0; k < roots.size(); ++k) {
      if (used[k] || roots[k].imag() >= 0.0) continue;
      const double d = std::abs(roots[k] - std::conj(roots[i]));
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
    if (best != roots.size()) {
      used[best] = true;
      ordered.push_back(roots[best]);
    }
  }
  for (std::size_t i = 0; i < roots.size(); ++i)
    if (!used[i]) ordered.push_back(roots[i]);

  std::vector<Complex> prod{Complex(1.0)};
  for (const Complex& r : ordered) {
    prod.push_back(Complex(0.0));
    for (std::size_t j = prod.size() - 1; j > 0; --j) prod[j] = prod[j - 1] - r * prod[j];
    prod[0] = -r * prod[0];
  }
  std::vector<double> c(prod.size());
  for (std::size_t j = 0; j < prod.size(); ++j) {
    if (std::abs(prod[j].imag()) > kImagResidueTol)
      throw std::invalid_argument("roots are not closed under complex conjugation");
    c[j] = prod[j].real();
  }
  c.back() = 1.0;
  return Polynomial(std::move(c));
}

// ---------------------------------------------------------------------------
// Laguerre

struct LaguerreOptions {
  double tol = 1e-12;
  int max_iter = 100;
  int max_restarts = 8;
  int polish_steps = 2;
};

namespace detail {

struct LaguerreEval {
  Complex p, dp, half_d2p;
  double err;  // rounding bound on p, in units of |p| terms
};

inline LaguerreEval laguerre_eval(std::span<const Complex> c, Complex z) {
  const std::size_t m = c.size() - 1;
  Complex b = c[m], d = 0.0, f = 0.0;
  const double az = std::abs(z);
  double err = std::abs(b);
  for (std::size_t j = m; j-- > 0;) {
    f = f * z + d;
    d = d * z + b;
    b = b * z + c[j];
    err = std::abs(b) + az * err;
  }
  return {b, d, f, err};
}

/// One Laguerre correction. Returns the step to subtract from z.
inline Complex laguerre_step(const LaguerreEval& e, std::size_t m, int iter) {
  const double md = static_cast<double>(m);
  const Complex g = e.dp / e.p;
  const Complex g2 = g * g;
  const Complex hh = g2 - 2.0 * e.half_d2p / e.p;
  const Complex sq = std::sqrt((md - 1.0) * (md * hh - g2));
  const Complex gp = g + sq;
  const Complex gm = g - sq;
  const Complex denom = std::abs(gp) >= std::abs(gm) ? gp : gm;
  if (std::abs(denom) > 0.0) return md / denom;
  return std::polar(1.0, static_cast<double>(iter));
}

enum class LaguerreOutcome { converged, stalled };

/// Iterates from z in place. Fractional steps every 10 iterations break limit cycles.
inline LaguerreOutcome laguerre_iterate(std::span<const Complex> c, Complex& z, int max_iter) {
  static constexpr double kFrac[] = {0.5, 0.25, 0.75, 0.13, 0.38, 0.62, 0.88, 1.0};
  const std::size_t m = c.size() - 1;
  for (int iter = 1; iter <= max_iter; ++iter) {
    const auto e = laguerre_eval(c, z);
    if (std::abs(e.p) <= 4.0 * DBL_EPSILON * e.err) return LaguerreOutcome::converged;
    const Complex dz = laguerre_step(e, m, iter);
    const Complex z1 = z - dz;
    if (z1 == z) return LaguerreOutcome::converged;
    if (iter % 10 != 0)
      z = z1;
    else
      z -= kFrac[static_cast<std::size_t>(iter / 10 - 1) % std::size(kFrac)] * dz;
  }
  return LaguerreOutcome::stalled;
}

inline double evaluation_scale(std::span<const double> c, Complex z) {
  double s = 0.0;
  const double az = std::abs(z);
  for (std::size_t j = c.size(); j-- > 0;) s = s * az + std::abs(c[j]);
  return s;
}

}  // namespace detail

/// All deg(p) complex roots with multiplicity. Each root is found on the deflated
/// polynomial starting from 0 (restarting from seeded random points on stall),
/// then polished against p itself.
inline std::vector<Complex> laguerre_roots(const Polynomial& p, const LaguerreOptions& opt = {}) {
  const auto c = p.coeffs();
  const std::size_t n = p.degree();
  if (n == 0) throw std::invalid_argument("root finding needs degree >= 1");
  if (p.leading() == 0.0) throw std::invalid_argument("leading coefficient must be nonzero");

  const std::vector<Complex> original(c.begin(), c.end());
  std::vector<Complex> work = original;
  std::vector<Complex> roots;
  roots.reserve(n);

  // Cauchy bound on root magnitudes sets the restart radius.
  double radius = 0.0;
  for (std::size_t j = 0; j < n; ++j) radius = std::max(radius, std::abs(c[j] / c[n]));
  radius += 1.0;

  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  for (std::size_t m = n; m >= 1; --m) {
    std::span<const Complex> active(work.data(), m + 1);
    Complex z = 0.0;
    auto outcome = detail::laguerre_iterate(active, z, opt.max_iter);
    for (int r = 0; outcome == detail::LaguerreOutcome::stalled && r < opt.max_restarts; ++r) {
      z = Complex(unit(rng), unit(rng)) * radius;
      outcome = detail::laguerre_iterate(active, z, opt.max_iter);
    }
    if (outcome == detail::LaguerreOutcome::stalled)
      throw RootFindingError("Laguerre iteration did not converge", roots);
    if (std::abs(z.imag()) <= 2.0 * DBL_EPSILON * std::abs(z.real())) z = Complex(z.real(), 0.0);
    roots.push_back(z);

    Complex b = work[m];
    for (std::size_t j = m; j-- > 0;) {
      const Complex t = work[j];
      work[j] = b;
      b = z * b + t;
    }
  }

  for (Complex& z : roots) {
    detail::laguerre_iterate(original, z, opt.polish_steps);
    if (std::abs(z.imag()) <= 2.0 * DBL_EPSILON * std::abs(z.real())) z = Complex(z.real(), 0.0);
    const double residual = std::abs(horner_eval<Complex>(c, z));
    if (!(residual <= opt.tol * (1.0 + detail::evaluation_scale(c, z))))
      throw RootFindingError("root failed residual check after polishing", roots);
  }
  return roots;
}

}  // namespace leapgrad
