#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "leapgrad/polynomial.hpp"
#include "test_support.hpp"

namespace lg = leapgrad;
using lg::Complex;
using lg::Polynomial;

TEST(Horner, MatchesPowerSum) {
  // naive oracle: 1 + 2*2 + 3*4 = 17
  EXPECT_EQ(lg::testing::naive_eval(std::vector<double>{1, 2, 3}, 2.0), 17.0);
  EXPECT_EQ(lg::horner_eval(Polynomial{1, 2, 3}, 2.0), 17.0);
  EXPECT_EQ(lg::horner_eval(Polynomial{5}, 100.0), 5.0);
  EXPECT_EQ(lg::horner_eval(Polynomial{0, 1}, 0.0), 0.0);
}

TEST(Horner, RandomAgreesWithNaive) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ux(-1.0, 1.0);
  for (int t = 0; t < 500; ++t) {
    const auto c = lg::testing::random_coeffs(rng, rng() % 16);
    const double x = ux(rng);
    const double want = lg::testing::naive_eval(c, x);
    double scale = 0.0;
    for (double v : c) scale += std::abs(v);
    EXPECT_NEAR(lg::horner_eval(Polynomial(c), x), want, 1e-10 * scale);
  }
}

TEST(Derivative, Examples) {
  // central difference oracle for x^2 at 3
  const Polynomial sq{0, 0, 1};
  const double d = 1e-6;
  const double fd = (lg::testing::naive_eval(sq, 3 + d) - lg::testing::naive_eval(sq, 3 - d)) / (2 * d);
  EXPECT_NEAR(fd, 6.0, 1e-6);
  EXPECT_EQ(lg::eval_derivative(sq, 3.0), 6.0);
  EXPECT_EQ(lg::eval_derivative(Polynomial{7}, 4.2), 0.0);
  EXPECT_EQ(lg::eval_derivative(Polynomial{0, 1}, -9.0), 1.0);
}

TEST(Derivative, AgreesWithFiniteDifference) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> ux(-1.0, 1.0);
  for (int t = 0; t < 500; ++t) {
    const auto c = lg::testing::random_coeffs(rng, 1 + rng() % 12);
    const double x = ux(rng);
    const double d = 1e-6;
    const double fd = (lg::testing::naive_eval(c, x + d) - lg::testing::naive_eval(c, x - d)) / (2 * d);
    EXPECT_NEAR(lg::eval_derivative(Polynomial(c), x), fd, 1e-4);
  }
}

TEST(Derivative, CoefficientsMatchEvaluation) {
  const Polynomial p{3, -1, 4, 2};
  EXPECT_EQ(lg::derivative(p), (Polynomial{-1, 8, 6}));
  EXPECT_EQ(lg::derivative(Polynomial{9}), Polynomial{0});
}

TEST(HornerQuotient, Examples) {
  // (x^2 - 1) / (x - 1) = x + 1 by long division
  EXPECT_EQ(lg::testing::long_divide({-1, 0, 1}, 1.0), (std::vector<double>{1, 1}));
  EXPECT_EQ(lg::horner_quotient(Polynomial{-1, 0, 1}, 1.0), (Polynomial{1, 1}));
  EXPECT_EQ(lg::horner_quotient(Polynomial{0, 1}, 0.0), Polynomial{1});
  EXPECT_EQ(lg::horner_quotient(Polynomial{4.5, -2.25}, 17.0), Polynomial{-2.25});
}

TEST(HornerQuotient, ConstantRejected) {
  EXPECT_THROW(lg::horner_quotient(Polynomial{3}, 0.5), std::invalid_argument);
}

TEST(HornerQuotient, ReconstructsPolynomial) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> ux(-1.0, 1.0);
  for (int t = 0; t < 500; ++t) {
    const auto c = lg::testing::random_coeffs(rng, 1 + rng() % 15);
    const double xk = ux(rng);
    const Polynomial q = lg::horner_quotient(Polynomial(c), xk);
    ASSERT_EQ(q.degree() + 1, c.size() - 1);
    auto back = lg::testing::multiply(std::vector<double>(q.coeffs().begin(), q.coeffs().end()), {-xk, 1.0});
    back[0] += lg::testing::naive_eval(c, xk);
    double scale = 0.0;
    for (double v : c) scale = std::max(scale, std::abs(v));
    for (std::size_t j = 0; j < c.size(); ++j) EXPECT_NEAR(back[j], c[j], 1e-10 * scale) << "coefficient " << j;
    // and against the long-division oracle
    const auto q_oracle = lg::testing::long_divide(c, xk);
    for (std::size_t j = 0; j < q_oracle.size(); ++j) EXPECT_NEAR(q[j], q_oracle[j], 1e-10 * scale);
  }
}

TEST(HornerQuotient, FusedEvaluationMatchesMaterialized) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> ux(-1.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const Polynomial p(lg::testing::random_coeffs(rng, 1 + rng() % 12));
    const double xk = ux(rng), y = ux(rng);
    EXPECT_DOUBLE_EQ(lg::quotient_eval(p.coeffs(), xk, y), lg::horner_eval(lg::horner_quotient(p, xk), y));
  }
}

TEST(Trim, Examples) {
  EXPECT_EQ(lg::trim(Polynomial{1, 2, 0, 0}), (Polynomial{1, 2}));
  EXPECT_EQ(lg::trim(Polynomial{0}), Polynomial{0});
  EXPECT_EQ(lg::trim(Polynomial{0, 0, 0}), Polynomial{0});
  EXPECT_EQ(lg::trim(Polynomial{3, 0, 5}), (Polynomial{3, 0, 5}));
}

TEST(Polynomial, EmptyRejected) { EXPECT_THROW(Polynomial(std::vector<double>{}), std::invalid_argument); }

TEST(TextFormat, ParsesAscendingCoefficients) {
  EXPECT_EQ(lg::parse_polynomial("-1 0 1"), (Polynomial{-1, 0, 1}));
  EXPECT_EQ(lg::parse_polynomial("  2.5e-1\t3 "), (Polynomial{0.25, 3}));
  EXPECT_THROW(lg::parse_polynomial(""), std::invalid_argument);
  EXPECT_THROW(lg::parse_polynomial("1 x 2"), std::invalid_argument);
  EXPECT_THROW(lg::parse_polynomial("1 nan"), std::invalid_argument);
}

TEST(TextFormat, FormatParsesBack) {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 50; ++t) {
    const Polynomial p(lg::testing::random_coeffs(rng, rng() % 10));
    EXPECT_EQ(lg::parse_polynomial(lg::format_polynomial(p)), p);
  }
}

TEST(PolyFromRoots, Examples) {
  // (x-1)(x+1) = x^2 - 1, (x-i)(x+i) = x^2 + 1
  const std::vector<Complex> pm{1.0, -1.0};
  EXPECT_EQ(lg::poly_from_roots(pm), (Polynomial{-1, 0, 1}));
  const std::vector<Complex> ii{{0, 1}, {0, -1}};
  EXPECT_EQ(lg::poly_from_roots(ii), (Polynomial{1, 0, 1}));
  EXPECT_EQ(lg::poly_from_roots(std::vector<Complex>{}), Polynomial{1});
}

TEST(PolyFromRoots, PairsConjugatesRegardlessOfOrder) {
  const std::vector<Complex> roots{{0.5, 0.25}, {-0.3, 0.0}, {0.1, -0.7}, {0.5, -0.25}, {0.1, 0.7}};
  const Polynomial p = lg::poly_from_roots(roots);
  ASSERT_EQ(p.degree(), 5u);
  EXPECT_EQ(p.leading(), 1.0);
  for (const auto& r : roots) EXPECT_LT(std::abs(lg::horner_eval<Complex>(p.coeffs(), r)), 1e-14);
}

TEST(PolyFromRoots, RejectsUnpairedComplexRoot) {
  const std::vector<Complex> roots{{0.2, 0.5}, {0.3, 0.0}};
  EXPECT_THROW(lg::poly_from_roots(roots), std::invalid_argument);
}

namespace {

void expect_same_roots(std::vector<Complex> got, std::vector<Complex> want, double tol) {
  ASSERT_EQ(got.size(), want.size());
  for (const Complex& w : want) {
    auto it = std::min_element(got.begin(), got.end(),
                               [&](const Complex& a, const Complex& b) { return std::abs(a - w) < std::abs(b - w); });
    EXPECT_LE(std::abs(*it - w), tol) << "missing root " << w;
    got.erase(it);
  }
}

}  // namespace

TEST(Laguerre, Examples) {
  expect_same_roots(lg::laguerre_roots(Polynomial{-1, 0, 1}), {1.0, -1.0}, 1e-12);
  const double s = std::sqrt(3.0) / 2.0;
  expect_same_roots(lg::laguerre_roots(Polynomial{-1, 0, 0, 1}), {1.0, {-0.5, s}, {-0.5, -s}}, 1e-12);
  expect_same_roots(lg::laguerre_roots(Polynomial{0, 1}), {0.0}, 0.0);
}

TEST(Laguerre, RejectsConstant) {
  EXPECT_THROW(lg::laguerre_roots(Polynomial{5}), std::invalid_argument);
  EXPECT_THROW(lg::laguerre_roots(Polynomial{1, 2, 0}), std::invalid_argument);
}

TEST(Laguerre, StallReportsPartialRoots) {
  lg::LaguerreOptions opt;
  opt.max_iter = 1;
  opt.max_restarts = 0;
  try {
    lg::laguerre_roots(Polynomial{1, 0, 0, 0, 0, 0, 0, 3, 1}, opt);
    FAIL() << "expected a stall with a one-iteration budget";
  } catch (const lg::RootFindingError& e) {
    EXPECT_LT(e.partial_roots().size(), 8u);
  }
}

TEST(Laguerre, DoubleRoot) {
  // (x - 0.5)^2 (x + 2)
  const auto roots = lg::laguerre_roots(Polynomial{0.5, -1.75, 1.0, 1.0});
  expect_same_roots(roots, {0.5, 0.5, -2.0}, 1e-7);
}

TEST(Laguerre, RecoversSampledRoots) {
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> up(0.0, 1.0);
  int checked = 0;
  while (checked < 300) {
    const int n = 1 + static_cast<int>(rng() % 12);
    std::vector<Complex> roots;
    while (static_cast<int>(roots.size()) < n) {
      if (n - static_cast<int>(roots.size()) >= 2 && rng() % 2 == 0) {
        const Complex r(u(rng), up(rng));
        roots.push_back(r);
        roots.push_back(std::conj(r));
      } else {
        roots.emplace_back(u(rng), 0.0);
      }
    }
    bool separated = true;
    for (std::size_t i = 0; i < roots.size(); ++i)
      for (std::size_t k = i + 1; k < roots.size(); ++k) separated &= std::abs(roots[i] - roots[k]) >= 1e-2;
    if (!separated) continue;
    const auto found = lg::laguerre_roots(lg::poly_from_roots(roots));
    expect_same_roots(found, roots, 1e-6);
    ++checked;
  }
}
