// Copyright 2026 The emptybox Authors
// SPDX-License-Identifier: Apache-2.0

#include "emptybox/oracle.hpp"

#include <cmath>

#include <doctest.h>

#include "emptybox/pointgen.hpp"

using namespace emptybox;

TEST_CASE("exact_max_empty_box basics") {
  SUBCASE("no points: the whole cube") {
    const OracleResult res = exact_max_empty_box(PointSet(2, {}));
    CHECK(res.volume == doctest::Approx(1.0));
  }
  SUBCASE("two-point tight configuration") {
    const double xi = (3.0 - std::sqrt(5.0)) / 2.0;
    const OracleResult res =
        exact_max_empty_box(known_tight_configs(TightConfig::two_point_xi));
    CHECK(std::abs(res.volume - xi) <= 1e-12);
  }
  SUBCASE("four-point tight configuration") {
    const OracleResult res = exact_max_empty_box(
        known_tight_configs(TightConfig::four_point_quarter));
    CHECK(std::abs(res.volume - 0.25) <= 1e-12);
  }
  SUBCASE("result is empty and maximal") {
    for (std::uint64_t seed : {11ull, 12ull, 13ull, 14ull}) {
      const PointSet pts = uniform_random(9, 2, seed);
      const OracleResult res = exact_max_empty_box(pts);
      for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK_FALSE(contains_point_strict(res.box, pts.point(i)));
      }
      CHECK(is_maximal_empty(res.box, pts, OpenBox::unit_cube(2)));
    }
  }
}

TEST_CASE("scale guard refuses and can be forced") {
  const PointSet big = uniform_random(13, 3, 1);
  CHECK_THROWS_AS(exact_max_empty_box(big), ScaleGuardError);
  const OracleResult res = exact_max_empty_box(big, true);
  CHECK(res.volume > 0.0);
  CHECK(res.volume >= 1.0 / 14.0);
}

TEST_CASE("planar oracle") {
  SUBCASE("van der Corput 16") {
    const OracleResult res = exact_max_empty_rect_2d(van_der_corput(16));
    CHECK(res.volume < 0.25);
  }
  SUBCASE("single center point gives a half square") {
    const OracleResult res =
        exact_max_empty_rect_2d(PointSet::from_rows(2, {{0.5, 0.5}}));
    CHECK(res.volume == doctest::Approx(0.5));
  }
  SUBCASE("agrees with the exhaustive oracle") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const PointSet pts = uniform_random(1 + seed % 12, 2, 500 + seed);
      const double a = exact_max_empty_rect_2d(pts).volume;
      const double b = exact_max_empty_box(pts).volume;
      CHECK(std::abs(a - b) <= 1e-12);
    }
  }
  SUBCASE("wrong dimension") {
    CHECK_THROWS_AS(exact_max_empty_rect_2d(uniform_random(4, 3, 1)),
                    std::invalid_argument);
  }
}

TEST_CASE("is_maximal_empty") {
  SUBCASE("the worked planar example in raw coordinates") {
    const PointSet fig = restricted_lb_construction(2, {3, 4});
    const OpenBox region({-5, -5}, {5, 5});
    CHECK(is_maximal_empty(OpenBox({-3, -3}, {2, 3}), fig, region));
  }
  SUBCASE("the whole region is maximal when empty") {
    CHECK(is_maximal_empty(OpenBox::unit_cube(2), PointSet(2, {}),
                           OpenBox::unit_cube(2)));
  }
  SUBCASE("an unpinned face is not maximal") {
    const PointSet pts = PointSet::from_rows(2, {{0.75, 0.5}});
    CHECK_FALSE(is_maximal_empty(OpenBox({0, 0}, {0.5, 1}), pts,
                                 OpenBox::unit_cube(2)));
  }
  SUBCASE("corner contact does not pin a face") {
    // point sits exactly on the corner of the box; no face is pinned by it
    const PointSet pts = PointSet::from_rows(2, {{0.5, 0.5}});
    CHECK_FALSE(is_maximal_empty(OpenBox({0, 0}, {0.5, 0.5}), pts,
                                 OpenBox::unit_cube(2)));
  }
}

TEST_CASE("enumerate_restricted_boxes") {
  SUBCASE("empty set: the region itself") {
    const auto boxes =
        enumerate_restricted_boxes(PointSet(2, {}), OpenBox::unit_cube(2));
    REQUIRE(boxes.size() == 1);
    CHECK(boxes[0] == OpenBox::unit_cube(2));
  }
  SUBCASE("single point: the four half slabs") {
    const PointSet pts = PointSet::from_rows(2, {{0.25, 0.5}});
    const auto boxes = enumerate_restricted_boxes(pts, OpenBox::unit_cube(2));
    CHECK(boxes.size() == 4);
  }
  SUBCASE("count sandwich for the embedded construction") {
    const PointSet emb = embed_in_unit_cube(
        restricted_lb_construction(2, {2, 2}), default_embed_margin(4));
    const auto boxes = enumerate_restricted_boxes(emb, OpenBox::unit_cube(2));
    CHECK(boxes.size() >= 9);
    CHECK(boxes.size() <= 36);
  }
  SUBCASE("every enumerated box is maximal and empty") {
    const PointSet pts = uniform_random(7, 2, 77);
    const auto boxes = enumerate_restricted_boxes(pts, OpenBox::unit_cube(2));
    for (const auto& b : boxes) {
      CHECK(is_maximal_empty(b, pts, OpenBox::unit_cube(2)));
    }
    // the maximum-volume empty box is one of them
    double best = 0;
    for (const auto& b : boxes) best = std::max(best, volume(b));
    CHECK(best == doctest::Approx(exact_max_empty_box(pts).volume));
  }
}

TEST_CASE("exact_max_empty_cube") {
  SUBCASE("grid vertices: side 1/(k+1)") {
    const OracleResult res = exact_max_empty_cube(grid_vertices(3, 2));
    CHECK(std::abs(res.volume - 1.0 / 16) <= 1e-12);
  }
  SUBCASE("no points") {
    CHECK(exact_max_empty_cube(PointSet(2, {})).volume == doctest::Approx(1.0));
  }
  SUBCASE("single center point") {
    const OracleResult res =
        exact_max_empty_cube(PointSet::from_rows(2, {{0.5, 0.5}}));
    CHECK(res.volume == doctest::Approx(0.25));
  }
  SUBCASE("cube optimum never exceeds box optimum") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const PointSet pts = uniform_random(6, 3, 900 + seed);
      const double cube = exact_max_empty_cube(pts).volume;
      const double box = exact_max_empty_box(pts).volume;
      CHECK(cube <= box + 1e-12);
    }
  }
  SUBCASE("returned box is a hypercube") {
    const PointSet pts = uniform_random(8, 2, 4);
    const OracleResult res = exact_max_empty_cube(pts);
    const double side = res.box.extent(0);
    CHECK(res.box.extent(1) == doctest::Approx(side));
    CHECK(res.volume == doctest::Approx(side * side));
  }
}
