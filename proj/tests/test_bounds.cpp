// Copyright 2026 The emptybox Authors
// SPDX-License-Identifier: Apache-2.0

#include "emptybox/bounds.hpp"

#include <cmath>

#include <doctest.h>

#include "emptybox/oracle.hpp"
#include "emptybox/pointgen.hpp"

using namespace emptybox;

TEST_CASE("integer root extraction") {
  CHECK(integer_root(0, 3) == 0);
  CHECK(integer_root(8, 3) == 2);
  CHECK(integer_root(9, 2) == 3);
  CHECK(integer_root(10, 2) == 3);
  CHECK(integer_root(63, 3) == 3);
  CHECK(integer_root(64, 3) == 4);
  CHECK(integer_root(1000000000000ull, 2) == 1000000);
}

TEST_CASE("binomials in 128 bits") {
  CHECK(binomial_u128(4, 2) == 6);
  CHECK(binomial_u128(7, 2) == 21);
  CHECK(binomial_u128(2, 5) == 0);
  CHECK(u128_to_string(binomial_u128(64, 16)) == "488526937079580");
  // C(64,16)*C(32,16) needs more than 64 bits
  const auto big = binomial_u128(64, 16) * binomial_u128(32, 16);
  CHECK(u128_to_string(big) == "293643961865299407436200");
}

TEST_CASE("A_d bounds") {
  SUBCASE("n=15, d=2") {
    const BoundReport r = bounds_Ad(15, 2);
    CHECK(r.lower == doctest::Approx(0.0625));
    CHECK(r.upper == doctest::Approx(4.0 / 15));
  }
  SUBCASE("n=100, d=2 upper is 4/n") {
    CHECK(bounds_Ad(100, 2).upper == doctest::Approx(0.04));
  }
  SUBCASE("n=100, d=3 upper is 24/n") {
    CHECK(bounds_Ad(100, 3).upper == doctest::Approx(0.24));
  }
  SUBCASE("n=0 degenerates to the whole cube") {
    const BoundReport r = bounds_Ad(0, 2);
    CHECK(r.lower == 1.0);
    CHECK(r.upper == 1.0);
  }
  SUBCASE("lower switches to the improved constant for large n") {
    // (5/4)/(n+5) > 1/(n+1) for n >= 16
    const BoundReport r = bounds_Ad(100, 2);
    CHECK(r.lower == doctest::Approx(1.25 / 105.0));
  }
}

TEST_CASE("A'_d bounds") {
  SUBCASE("perfect square: bounds coincide") {
    const BoundReport r = bounds_Aprime(9, 2);
    CHECK(r.lower == 0.0625);
    CHECK(r.upper == 0.0625);
  }
  SUBCASE("perfect cube") {
    const BoundReport r = bounds_Aprime(8, 3);
    CHECK(r.lower == doctest::Approx(1.0 / 27).epsilon(1e-14));
    CHECK(r.upper == doctest::Approx(1.0 / 27).epsilon(1e-14));
  }
  SUBCASE("n=10, d=2") {
    const BoundReport r = bounds_Aprime(10, 2);
    CHECK(r.lower ==
          doctest::Approx(1.0 / std::pow(std::sqrt(10.0) + 1, 2)));
    CHECK(r.upper == 0.0625);
    CHECK(r.lower <= r.upper);
  }
}

TEST_CASE("restricted count bounds") {
  SUBCASE("(4,2)") {
    const BoundReport r = restricted_count_bounds(4, 2);
    CHECK(r.lower == 9.0);
    CHECK(r.upper == 36.0);
    CHECK(r.lower_exact == "9");
    CHECK(r.upper_exact == "36");
  }
  SUBCASE("(7,2)") {
    const BoundReport r = restricted_count_bounds(7, 2);
    CHECK(r.lower == 16.0);
    CHECK(r.upper == 126.0);
  }
  SUBCASE("n = d") {
    const BoundReport r = restricted_count_bounds(3, 3);
    CHECK(r.lower == 8.0);   // 2^d
    CHECK(r.upper == 20.0);  // C(2d,d)
  }
  SUBCASE("n < d is degenerate") {
    const BoundReport r = restricted_count_bounds(2, 3);
    CHECK(r.degenerate);
    CHECK(r.upper == 0.0);
  }
  SUBCASE("big values stay exact") {
    const BoundReport r = restricted_count_bounds(64, 16);
    CHECK(r.upper_exact == "293643961865299407436200");
    CHECK(r.lower_exact == "152587890625");  // 5^16
  }
}

TEST_CASE("algorithm count bounds") {
  SUBCASE("closed-form regime closed forms") {
    const AlgorithmBounds b = algorithm_count_bounds(100, 3, 0.5);
    CHECK(b.closed_form_regime);
    const double log2n = std::log2(100.0);
    CHECK(b.canonical_closed ==
          doctest::Approx(std::pow(2.0 * std::exp(1.0) / 0.5 * log2n, 3)));
    CHECK(b.placement_closed == doctest::Approx(12.0 * std::pow(12.0, 3) * 100));
    CHECK(b.placement_closed == doctest::Approx(2073600.0));
    CHECK(b.canonical_exact > 0);
  }
  SUBCASE("outside the regime only the binomial is reported") {
    const AlgorithmBounds b = algorithm_count_bounds(5, 2, 0.5);
    CHECK_FALSE(b.closed_form_regime);
    CHECK(b.canonical_exact > 0);
    CHECK(b.canonical_closed == 0.0);
  }
}

TEST_CASE("sandwich against measured optima") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const PointSet pts = uniform_random(8, 2, seed);
    const double v = exact_max_empty_box(pts).volume;
    CHECK(v >= 1.0 / 9.0);
  }
  for (std::size_t n : {8u, 16u}) {
    const double v = exact_max_empty_rect_2d(van_der_corput(n)).volume;
    CHECK(v < 4.0 / static_cast<double>(n));
  }
}
