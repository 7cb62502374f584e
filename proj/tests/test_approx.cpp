// Copyright 2026 The emptybox Authors
// SPDX-License-Identifier: Apache-2.0

#include "emptybox/approx.hpp"

#include <cmath>
#include <set>

#include <stdexcept>

#include <doctest.h>

#include "emptybox/bounds.hpp"
#include "emptybox/oracle.hpp"
#include "emptybox/pointgen.hpp"

using namespace emptybox;

namespace {

double pow_direct(double a, int e) {
  double r = 1;
  for (int i = 0; i < e; ++i) r *= a;
  return r;
}

}  // namespace

TEST_CASE("derive_params") {
  SUBCASE("n=15, d=3, eps=0.5") {
    const ApproxParams p = derive_params(15, 3, 0.5);
    CHECK(p.delta == doctest::Approx(1.0 / 12));
    CHECK(p.m == 12);
    CHECK(p.a == doctest::Approx(12.0 / 11));
    CHECK(p.k == 32);
  }
  SUBCASE("empty instance: k = 1") {
    CHECK(derive_params(0, 2, 0.5).k == 1);
  }
  SUBCASE("the defining inequality holds by direct multiplication") {
    for (std::size_t n : {0u, 1u, 5u, 12u, 100u, 4000u}) {
      for (double eps : {0.1, 0.25, 0.5, 0.9}) {
        const ApproxParams p = derive_params(n, 3, eps);
        CHECK(pow_direct(p.a, p.k - 1) <= n + 1.0);
        CHECK(pow_direct(p.a, p.k) > n + 1.0);
        REQUIRE(p.ladder.size() == static_cast<std::size_t>(p.k));
        for (int i = 0; i + 1 < p.k; ++i) {
          CHECK(p.ladder[i] < p.ladder[i + 1]);
        }
        CHECK(p.ladder.front() > 0.0);
        CHECK(p.ladder.back() < 1.0);
      }
    }
  }
  SUBCASE("jitter draws from [(1-1/(2d))eps, eps] reproducibly") {
    const ApproxParams a = derive_params(10, 3, 0.5, 42, true);
    const ApproxParams b = derive_params(10, 3, 0.5, 42, true);
    CHECK(a.epsilon_effective == b.epsilon_effective);
    CHECK(a.epsilon_effective >= 0.5 * (1.0 - 1.0 / 6));
    CHECK(a.epsilon_effective <= 0.5);
    const ApproxParams c = derive_params(10, 3, 0.5, 43, true);
    CHECK(c.epsilon_effective != a.epsilon_effective);
  }
  SUBCASE("invalid epsilon") {
    CHECK_THROWS_AS(derive_params(5, 2, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(derive_params(5, 2, 1.0), std::invalid_argument);
  }
}

TEST_CASE("derive_cube_params") {
  SUBCASE("n=15, d=3, eps=0.5") {
    const ApproxParams p = derive_cube_params(15, 3, 0.5);
    CHECK(p.k == 15);
    const double bound = std::pow(15.0, 1.0 / 3) + 1.0;
    CHECK(pow_direct(p.a, p.k - 1) <= bound);
    CHECK(pow_direct(p.a, p.k) > bound);
  }
  SUBCASE("n=0: k=1") { CHECK(derive_cube_params(0, 3, 0.5).k == 1); }
}

TEST_CASE("enumerate_large_exponents") {
  SUBCASE("d=2, k=3: everything except (0,0)") {
    ApproxParams p = derive_params(0, 2, 0.5);
    p.k = 3;
    const auto tuples = enumerate_large_exponents(p);
    CHECK(tuples.size() == 8);
    std::set<std::vector<int>> seen(tuples.begin(), tuples.end());
    CHECK(seen.count({0, 0}) == 0);
    CHECK(seen.count({0, 1}) == 1);
    CHECK(seen.count({2, 2}) == 1);
    // lexicographic order
    CHECK(tuples.front() == std::vector<int>{0, 1});
    CHECK(tuples.back() == std::vector<int>{2, 2});
  }
  SUBCASE("d=3, k=2: everything except the origin") {
    ApproxParams p = derive_params(0, 3, 0.5);
    p.k = 2;
    CHECK(enumerate_large_exponents(p).size() == 7);
  }
  SUBCASE("k=1: only the all-zero tuple") {
    const ApproxParams p = derive_params(0, 2, 0.5);
    REQUIRE(p.k == 1);
    const auto tuples = enumerate_large_exponents(p);
    REQUIRE(tuples.size() == 1);
    CHECK(tuples[0] == std::vector<int>{0, 0});
  }
}

TEST_CASE("search_canonical_box") {
  SUBCASE("no points: anchored at the origin") {
    const ApproxParams p = derive_params(0, 2, 0.5);
    const std::vector<int> y{0, 0};
    const auto box = search_canonical_box(PointSet(2, {}), y, p);
    REQUIRE(box.has_value());
    CHECK(box->lo[0] == 0.0);
    CHECK(box->lo[1] == 0.0);
    CHECK(box->extent(0) == doctest::Approx(p.ladder[0]));
  }
  SUBCASE("single center point leaves room for small boxes") {
    const PointSet pts = PointSet::from_rows(2, {{0.5, 0.5}});
    const ApproxParams p = derive_params(1, 2, 0.5);
    const std::vector<int> y{0, 0};
    const auto box = search_canonical_box(pts, y, p);
    REQUIRE(box.has_value());
    CHECK_FALSE(contains_point_strict(*box, pts.point(0)));
  }
  SUBCASE("saturated instance: no placement") {
    // 5x5 interior grid blocks every placement of the top canonical box
    const PointSet pts = grid_vertices(5, 2);
    const ApproxParams p = derive_params(pts.size(), 2, 0.5);
    const std::vector<int> y{p.k - 1, p.k - 1};
    const auto box = search_canonical_box(pts, y, p);
    CHECK_FALSE(box.has_value());
  }
  SUBCASE("dense and sparse engines agree") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const PointSet pts = uniform_random(3 + seed % 10, 2, 3000 + seed);
      const ApproxParams p = derive_params(pts.size(), 2, 0.4, seed, true);
      for (int y0 = 0; y0 < p.k; y0 += std::max(1, p.k / 4)) {
        for (int y1 = 0; y1 < p.k; y1 += std::max(1, p.k / 4)) {
          const std::vector<int> y{y0, y1};
          const auto dense =
              search_canonical_box(pts, y, p, PlacementEngine::dense);
          const auto sparse =
              search_canonical_box(pts, y, p, PlacementEngine::sparse);
          REQUIRE(dense.has_value() == sparse.has_value());
          if (dense) {
            CHECK(dense->lo == sparse->lo);
            CHECK(dense->hi == sparse->hi);
          }
        }
      }
    }
  }
}

TEST_CASE("approx_max_empty_box on reference instances") {
  SUBCASE("no points") {
    const SearchResult res = approx_max_empty_box(PointSet(2, {}), 0.5);
    CHECK(res.volume >= 0.5);
    CHECK(res.volume <= 1.0 + 1e-12);
  }
  SUBCASE("single center point, eps = 0.25") {
    const PointSet pts = PointSet::from_rows(2, {{0.5, 0.5}});
    const SearchResult res = approx_max_empty_box(pts, 0.25);
    CHECK(res.volume >= 0.375);
    CHECK(res.volume <= 0.5 + 1e-12);
  }
  SUBCASE("two-point tight configuration, eps = 0.1") {
    const double xi = (3.0 - std::sqrt(5.0)) / 2.0;
    const SearchResult res = approx_max_empty_box(
        known_tight_configs(TightConfig::two_point_xi), 0.1);
    CHECK(res.volume >= 0.9 * xi - 1e-12);
    CHECK(res.volume <= xi + 1e-12);
  }
}

TEST_CASE("approximation guarantee on random instances") {
  for (int d : {2, 3}) {
    for (std::size_t n : {4u, 8u, 12u}) {
      for (double eps : {0.1, 0.25, 0.5}) {
        for (std::uint64_t inst = 0; inst < 4; ++inst) {
          const PointSet pts =
              uniform_random(n, d, 7000 + d * 100 + n * 10 + inst);
          const double exact = exact_max_empty_box(pts).volume;
          const SearchResult res =
              approx_max_empty_box(pts, eps, inst % 5, true);
          CHECK(res.volume >= (1 - eps) * exact - 1e-12);
          CHECK(res.volume <= exact + 1e-12);
          // independent emptiness certificate
          for (std::size_t i = 0; i < pts.size(); ++i) {
            CHECK_FALSE(contains_point_strict(res.box, pts.point(i)));
          }
          for (std::size_t a = 0; a < res.box.dim(); ++a) {
            CHECK(res.box.lo[a] >= 0.0);
            CHECK(res.box.hi[a] <= 1.0);
          }
        }
      }
    }
  }
}

TEST_CASE("ascent and descent strategies agree") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const PointSet pts = uniform_random(2 + seed % 9, 2, 8800 + seed);
    SearchOptions ascent;
    ascent.strategy = SearchStrategy::level_ascent;
    SearchOptions descent;
    descent.strategy = SearchStrategy::level_descent;
    const SearchResult a = approx_max_empty_box(pts, 0.3, seed, true, ascent);
    const SearchResult b = approx_max_empty_box(pts, 0.3, seed, true, descent);
    CHECK(a.volume == b.volume);
    CHECK(a.box.lo == b.box.lo);
    CHECK(a.box.hi == b.box.hi);
  }
}

TEST_CASE("determinism across thread counts") {
  const PointSet pts = uniform_random(30, 2, 31337);
  SearchOptions one;
  one.threads = 1;
  SearchOptions four;
  four.threads = 4;
  const SearchResult a = approx_max_empty_box(pts, 0.2, 5, true, one);
  const SearchResult b = approx_max_empty_box(pts, 0.2, 5, true, four);
  CHECK(a.box.lo == b.box.lo);
  CHECK(a.box.hi == b.box.hi);
  CHECK(a.volume == b.volume);
  CHECK(a.stats.canonical_boxes_enumerated == b.stats.canonical_boxes_enumerated);
  CHECK(a.stats.placements_tested == b.stats.placements_tested);
}

TEST_CASE("stats respect the enumeration bound") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const PointSet pts = uniform_random(10, 2, 600 + seed);
    const SearchResult res = approx_max_empty_box(pts, 0.25, seed, true);
    const auto bound = binomial_u128(static_cast<unsigned>(res.stats.k + 2), 2);
    CHECK(static_cast<unsigned __int128>(res.stats.canonical_boxes_enumerated) <=
          bound);
    CHECK(res.stats.placements_tested > 0);
  }
}

TEST_CASE("epsilon monotonicity is measured, not asserted") {
  // nothing guarantees monotonicity in epsilon; report violations, never fail
  int violations = 0;
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const PointSet pts = uniform_random(8, 2, 71000 + seed);
    double prev = -1;
    for (double eps : {0.5, 0.25, 0.1}) {
      const SearchResult res = approx_max_empty_box(pts, eps, 0, false);
      if (prev > res.volume + 1e-12) ++violations;
      prev = res.volume;
    }
  }
  WARN_MESSAGE(violations == 0, "volume decreased for finer epsilon on "
                                    << violations
                                    << " instance pairs (allowed; informational)");
}

TEST_CASE("boundary points never block placements") {
  // van der Corput includes the origin; the guarantee must still hold
  const PointSet pts = van_der_corput(8);
  const double exact = exact_max_empty_box(pts).volume;
  const SearchResult res = approx_max_empty_box(pts, 0.25, 0, true);
  CHECK(res.volume >= 0.75 * exact - 1e-12);
  CHECK(res.volume <= exact + 1e-12);
}

TEST_CASE("approx_max_empty_cube") {
  SUBCASE("no points, d=3") {
    const SearchResult res = approx_max_empty_cube(PointSet(3, {}), 0.5);
    CHECK(res.volume >= 0.5);
  }
  SUBCASE("grid vertices, eps=0.1") {
    const SearchResult res = approx_max_empty_cube(grid_vertices(3, 2), 0.1);
    CHECK(res.volume >= 0.9 / 16 - 1e-12);
    CHECK(res.volume <= 1.0 / 16 + 1e-12);
  }
  SUBCASE("single center point, d=2, eps=0.25") {
    const PointSet pts = PointSet::from_rows(2, {{0.5, 0.5}});
    const SearchResult res = approx_max_empty_cube(pts, 0.25);
    CHECK(res.volume >= 0.75 * 0.25 - 1e-12);
    CHECK(res.volume <= 0.25 + 1e-12);
  }
  SUBCASE("result is a hypercube with equal sides") {
    const PointSet pts = uniform_random(9, 3, 123);
    const SearchResult res = approx_max_empty_cube(pts, 0.3);
    const double side = res.box.extent(0);
    for (std::size_t a = 1; a < 3; ++a) {
      CHECK(res.box.extent(a) == side);
    }
  }
  SUBCASE("guarantee against the exact cube oracle") {
    for (int d : {2, 3}) {
      for (std::size_t n : {4u, 8u, 12u}) {
        for (double eps : {0.1, 0.25, 0.5}) {
          const PointSet pts = uniform_random(n, d, 5000 + d * 10 + n);
          const double exact = exact_max_empty_cube(pts).volume;
          const SearchResult res = approx_max_empty_cube(pts, eps, 1, true);
          CHECK(res.volume >= (1 - eps) * exact - 1e-12);
          CHECK(res.volume <= exact + 1e-12);
        }
      }
    }
  }
  SUBCASE("ladder size is exactly k") {
    const ApproxParams p = derive_cube_params(100, 3, 0.25);
    CHECK(p.ladder.size() == static_cast<std::size_t>(p.k));
    // k <= (2d/eps) log2 n in the closed-form regime
    CHECK(p.k <= 2.0 * 3 / 0.25 * std::log2(100.0));
  }
}
