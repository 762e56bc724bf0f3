#pragma once

// Small hand-rolled generators for property tests. Every property runs a fixed number
// of cases from a fixed seed, so failures reproduce exactly.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "kpwave/grid.hpp"

namespace kptest {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  /// exp(uniform(log lo, log hi)), lo > 0.
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

  double sign() { return coin() ? 1.0 : -1.0; }

  bool coin() { return (rng_() & 1u) != 0; }

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  /// Nonzero value with random sign and magnitude in [lo, hi].
  double nonzero(double lo, double hi) { return sign() * log_uniform(lo, hi); }

 private:
  std::mt19937_64 rng_;
};

template <class Fn>
void for_all(int cases, std::uint64_t seed, Fn&& fn) {
  Gen g(seed);
  for (int i = 0; i < cases; ++i) fn(g, i);
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace kptest
