#pragma once

// Named analytic test functions on [-1, 1] with honest bound oracles.

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "analytic.hpp"

namespace leapgrad {

struct CatalogEntry {
  std::string name;
  std::function<double(double)> f;
  OrderBound bound;
};

inline const std::vector<CatalogEntry>& analytic_catalog() {
  static const std::vector<CatalogEntry> entries{
      // |d^k e^x| <= e on [-1, 1]
      {"exp", [](double x) { return std::exp(x); }, DerivativeBound{[](int) { return std::numbers::e; }}},
      // |d^k sin(3x)| <= 3^k
      {"sin3x", [](double x) { return std::sin(3.0 * x); },
       DerivativeBound{[](int k) { return std::pow(3.0, k); }}},
      // 1/(2+x) = sum (-x)^j / 2^(j+1); the tail after degree n is at most 2^-(n+1) for |x| <= 1.
      // Its k-th derivative peaks at k! on the interval, so a derivative bound cannot certify any order.
      {"rational", [](double x) { return 1.0 / (2.0 + x); },
       RemainderBound{[](int n) { return std::ldexp(1.0, -(n + 1)); }}},
  };
  return entries;
}

inline const CatalogEntry* find_catalog_entry(const std::string& name) {
  for (const auto& e : analytic_catalog())
    if (e.name == name) return &e;
  return nullptr;
}

}  // namespace leapgrad
