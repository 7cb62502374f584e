// Copyright 2026 The emptybox Authors
// SPDX-License-Identifier: Apache-2.0

#include "emptybox/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "emptybox/approx.hpp"
#include "emptybox/pointgen.hpp"

namespace emptybox {

std::uint64_t integer_root(std::uint64_t n, unsigned d) {
  if (d == 0) throw std::invalid_argument("integer root needs d >= 1");
  if (n == 0) return 0;
  auto pow_fits = [&](std::uint64_t r) {
    unsigned __int128 acc = 1;
    for (unsigned i = 0; i < d; ++i) {
      acc *= r;
      if (acc > n) return false;
    }
    return acc <= n;
  };
  auto r = static_cast<std::uint64_t>(
      std::floor(std::pow(static_cast<double>(n), 1.0 / d)));
  while (!pow_fits(r)) --r;
  while (pow_fits(r + 1)) ++r;
  return r;
}

unsigned __int128 binomial_u128(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  constexpr unsigned __int128 kMax = ~static_cast<unsigned __int128>(0);
  unsigned __int128 result = 1;
  for (unsigned i = 1; i <= k; ++i) {
    const unsigned __int128 factor = n - k + i;
    if (result > kMax / factor) {
      throw std::overflow_error("binomial exceeds 128 bits");
    }
    result = result * factor / i;  // divisible at every step
  }
  return result;
}

std::string u128_to_string(unsigned __int128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return s;
}

namespace {

double u128_to_double(unsigned __int128 v) {
  return static_cast<double>(static_cast<long double>(v));
}

}  // namespace

BoundReport bounds_Ad(std::size_t n, int d) {
  if (d < 2) throw std::invalid_argument("bounds_Ad needs d >= 2");
  BoundReport r;
  r.quantity = "A_d";
  r.n = n;
  r.dim = d;
  if (n == 0) {
    r.lower = r.upper = 1.0;
    r.formulas = {"n=0: the whole cube is empty"};
    return r;
  }
  const double nn = static_cast<double>(n);
  const double trivial = 1.0 / (nn + 1.0);
  const double improved = 1.25 / (nn + 5.0);
  r.lower = std::max(trivial, improved);
  r.formulas.push_back("lower = max(1/(n+1), (5/4)/(n+5))");
  if (d == 2) {
    r.upper = 4.0 / nn;
    r.formulas.push_back("upper = 4/n (van der Corput)");
  } else {
    const auto primes = first_primes(static_cast<std::size_t>(d) - 1);
    double prod = 1.0;
    for (auto p : primes) prod *= static_cast<double>(p);
    r.upper = std::ldexp(prod, d - 1) / nn;
    r.formulas.push_back(
        "upper = 2^(d-1) * prod_{i=1..d-1} p_i / n (Halton-Hammersley)");
  }
  return r;
}

BoundReport bounds_Aprime(std::size_t n, int d) {
  if (d < 2) throw std::invalid_argument("bounds_Aprime needs d >= 2");
  if (n == 0) {
    BoundReport r;
    r.quantity = "A_prime_d";
    r.dim = d;
    r.lower = r.upper = 1.0;
    r.formulas = {"n=0: the whole cube is empty"};
    return r;
  }
  BoundReport r;
  r.quantity = "A_prime_d";
  r.n = n;
  r.dim = d;
  const std::uint64_t root = integer_root(n, static_cast<unsigned>(d));
  // use the exact integer root when n is a perfect d-th power
  unsigned __int128 root_pow = 1;
  for (int i = 0; i < d; ++i) root_pow *= root;
  const double real_root =
      (root_pow == n) ? static_cast<double>(root)
                      : std::pow(static_cast<double>(n), 1.0 / d);
  r.lower = 1.0 / std::pow(real_root + 1.0, d);
  r.upper = 1.0 / std::pow(static_cast<double>(root) + 1.0, d);
  r.formulas = {"lower = (n^(1/d)+1)^-d", "upper = (floor(n^(1/d))+1)^-d"};
  return r;
}

BoundReport restricted_count_bounds(std::size_t n, int d) {
  if (d < 2) throw std::invalid_argument("restricted counts need d >= 2");
  BoundReport r;
  r.quantity = "restricted_count";
  r.n = n;
  r.dim = d;
  unsigned __int128 lower = 1;
  const auto base = static_cast<unsigned __int128>(n / static_cast<std::size_t>(d) + 1);
  for (int i = 0; i < d; ++i) lower *= base;
  const unsigned __int128 upper =
      binomial_u128(static_cast<unsigned>(n), static_cast<unsigned>(d)) *
      binomial_u128(static_cast<unsigned>(2 * d), static_cast<unsigned>(d));
  r.lower = u128_to_double(lower);
  r.upper = u128_to_double(upper);
  r.lower_exact = u128_to_string(lower);
  r.upper_exact = u128_to_string(upper);
  r.formulas = {"lower = (floor(n/d)+1)^d", "upper = C(n,d)*C(2d,d)"};
  if (n < static_cast<std::size_t>(d)) {
    r.degenerate = true;
    r.formulas.push_back("degenerate: n < d makes the upper binomial 0");
  }
  return r;
}

AlgorithmBounds algorithm_count_bounds(std::size_t n, int d, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0,1)");
  }
  AlgorithmBounds out;
  const ApproxParams params = derive_params(n, d, epsilon, 0, false);
  out.k = params.k;
  try {
    const auto exact = binomial_u128(static_cast<unsigned>(params.k + d),
                                     static_cast<unsigned>(d));
    out.canonical_exact = u128_to_double(exact);
    out.canonical_exact_str = u128_to_string(exact);
  } catch (const std::overflow_error&) {
    double acc = 0.0;
    for (int i = 1; i <= d; ++i) {
      acc += std::log(static_cast<double>(params.k + i)) -
             std::log(static_cast<double>(i));
    }
    out.canonical_exact = std::exp(acc);
    out.canonical_exact_str = "";
  }
  out.closed_form_regime = n >= 12 && d >= 3;
  if (out.closed_form_regime) {
    const double log2n = std::log2(static_cast<double>(n));
    out.canonical_closed =
        std::pow(2.0 * std::exp(1.0) / epsilon * log2n, d);
    out.placement_closed =
        12.0 * std::pow(2.0 * d / epsilon, d) * static_cast<double>(n);
  }
  return out;
}

}  // namespace emptybox
