// Copyright 2026 The emptybox Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EMPTYBOX_BOUNDS_HPP
#define EMPTYBOX_BOUNDS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace emptybox {

// Closed-form lower/upper bound pair for one quantity, with provenance text.
struct BoundReport {
  std::string quantity;  // A_d | A_prime_d | restricted_count | canonical_count | placement_count
  std::size_t n = 0;
  int dim = 0;
  std::optional<double> epsilon;
  double lower = 0.0;
  double upper = 0.0;
  std::vector<std::string> formulas;
  bool degenerate = false;
  // exact decimal values for integer quantities (may exceed double precision)
  std::string lower_exact;
  std::string upper_exact;
};

// A_d(n): lower max(1/(n+1), (5/4)/(n+5)); upper 4/n for d=2, else
// (2^(d-1) * prod of the first d-1 primes)/n.
BoundReport bounds_Ad(std::size_t n, int d);

// A'_d(n): (n^(1/d)+1)^-d <= A'_d(n) <= (floor(n^(1/d))+1)^-d, the floor
// taken by integer root extraction.
BoundReport bounds_Aprime(std::size_t n, int d);

// Restricted-box count: (floor(n/d)+1)^d <= count <= C(n,d)*C(2d,d),
// exact in 128-bit integers for n <= 64, d <= 16.
BoundReport restricted_count_bounds(std::size_t n, int d);

struct AlgorithmBounds {
  int k = 0;                       // ladder length from a^(k-1) <= n+1 < a^k
  double canonical_exact = 0.0;    // C(k+d, d)
  std::string canonical_exact_str;
  bool closed_form_regime = false;       // n >= 12, d >= 3
  double canonical_closed = 0.0;   // (2e/eps)^d log2(n)^d, closed-form regime (n >= 12, d >= 3) only
  double placement_closed = 0.0;   // 12 (2d/eps)^d n, closed-form regime (n >= 12, d >= 3) only
};

// Count bounds for the approximation algorithm's run statistics.
AlgorithmBounds algorithm_count_bounds(std::size_t n, int d, double epsilon);

// Largest integer r with r^d <= n.
std::uint64_t integer_root(std::uint64_t n, unsigned d);

// Exact binomial coefficient in 128 bits; throws std::overflow_error if the
// value does not fit.
unsigned __int128 binomial_u128(unsigned n, unsigned k);

std::string u128_to_string(unsigned __int128 v);

}  // namespace emptybox

#endif  // EMPTYBOX_BOUNDS_HPP
