// Copyright 2026 The emptybox Authors
// SPDX-License-Identifier: Apache-2.0

#include "emptybox/gridcount.hpp"

#include <random>

#include <stdexcept>

#include <doctest.h>

#include "emptybox/pointgen.hpp"

using namespace emptybox;

namespace {

PointSet two_points() {
  return PointSet::from_rows(2, {{0.25, 0.25}, {0.75, 0.75}});
}

GridSpec grid2x2() { return GridSpec({0.5, 0.5}); }

}  // namespace

TEST_CASE("cell counts bucket half-open") {
  const CountTensor cells = cell_counts(two_points(), grid2x2());
  CHECK(cells.at({0, 0}) == 1);
  CHECK(cells.at({1, 1}) == 1);
  CHECK(cells.at({0, 1}) == 0);
  CHECK(cells.at({1, 0}) == 0);

  const CountTensor empty = cell_counts(PointSet(2, {}), grid2x2());
  CHECK(empty.total() == 0);

  // a point exactly on a cell's upper face belongs to the next cell
  const CountTensor mid =
      cell_counts(PointSet::from_rows(2, {{0.5, 0.5}}), grid2x2());
  CHECK(mid.at({1, 1}) == 1);

  CHECK_THROWS_AS(
      cell_counts(PointSet::from_rows(2, {{1.5, 0.5}}), grid2x2()),
      std::invalid_argument);
}

TEST_CASE("corner counts are prefix sums") {
  const CountTensor cells = cell_counts(two_points(), grid2x2());
  const CountTensor corner = corner_counts(cells);
  CHECK(corner.at({0, 0}) == 1);
  CHECK(corner.at({0, 1}) == 1);
  CHECK(corner.at({1, 0}) == 1);
  CHECK(corner.at({1, 1}) == 2);

  const CountTensor zero = corner_counts(cell_counts(PointSet(2, {}), grid2x2()));
  CHECK(zero.total() == 0);

  // single-cell grid: N equals n
  const GridSpec one({1.0, 1.0});
  const CountTensor n1 = cell_counts(two_points(), one);
  const CountTensor c1 = corner_counts(n1);
  CHECK(c1.at({0, 0}) == 2);
}

TEST_CASE("box_count extracts window sums") {
  const CountTensor corner = corner_counts(cell_counts(two_points(), grid2x2()));
  CHECK(box_count(corner, {0, 1}, {1, 1}) == 0);
  CHECK(box_count(corner, {0, 0}, {2, 2}) == 2);
  CHECK_THROWS_AS(box_count(corner, {1, 1}, {2, 2}), std::out_of_range);

  const CountTensor zero = corner_counts(cell_counts(PointSet(2, {}), grid2x2()));
  CHECK(box_count(zero, {0, 0}, {1, 1}) == 0);
}

TEST_CASE("all_box_counts degenerate shapes") {
  const CountTensor cells = cell_counts(two_points(), grid2x2());
  const CountTensor corner = corner_counts(cells);
  const CountTensor unit = all_box_counts(corner, {1, 1});
  CHECK(unit.values == cells.values);  // window = cell
  const CountTensor full = all_box_counts(corner, {2, 2});
  REQUIRE(full.values.size() == 1);
  CHECK(full.values[0] == 2);
}

TEST_CASE("window counts equal naive counting on random instances") {
  std::mt19937_64 rng(99);
  auto unit = [&] { return (rng() >> 11) * 0x1.0p-53; };
  for (int trial = 0; trial < 60; ++trial) {
    const int d = 2 + trial % 3;
    const std::size_t n = rng() % 51;
    const PointSet pts = uniform_random(n, d, rng());
    std::vector<double> lengths(d);
    for (int a = 0; a < d; ++a) lengths[a] = 0.2 + 0.4 * unit();
    const GridSpec grid(lengths);
    const CountTensor corner = corner_counts(cell_counts(pts, grid));
    std::vector<std::size_t> sizes(d);
    for (int a = 0; a < d; ++a) sizes[a] = 1 + rng() % grid.extents[a];
    const CountTensor windows = all_box_counts(corner, sizes);

    std::vector<std::size_t> anchor(d, 0);
    for (std::size_t flat = 0; flat < windows.values.size(); ++flat) {
      std::int64_t naive = 0;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        bool in = true;
        for (int a = 0; a < d; ++a) {
          const std::size_t c = grid.cell_index(pts.coord(i, a), a);
          if (c < anchor[a] || c >= anchor[a] + sizes[a]) {
            in = false;
            break;
          }
        }
        if (in) ++naive;
      }
      REQUIRE(windows.values[flat] == naive);
      for (int a = d; a-- > 0;) {
        if (++anchor[a] < windows.shape[a]) break;
        anchor[a] = 0;
      }
    }
  }
}

TEST_CASE("corner counts are monotone and end at n") {
  const PointSet pts = uniform_random(37, 3, 5);
  const GridSpec grid({0.3, 0.25, 0.4});
  const CountTensor corner = corner_counts(cell_counts(pts, grid));
  std::vector<std::size_t> idx(3, 0);
  for (std::size_t flat = 0; flat < corner.values.size(); ++flat) {
    for (int a = 0; a < 3; ++a) {
      if (idx[a] == 0) continue;
      auto prev = idx;
      --prev[a];
      CHECK(corner.at(idx) >= corner.at(prev));
    }
    for (int a = 3; a-- > 0;) {
      if (++idx[a] < corner.shape[a]) break;
      idx[a] = 0;
    }
  }
  std::vector<std::size_t> top(corner.shape);
  for (auto& t : top) --t;
  CHECK(corner.at(top) == 37);
}

TEST_CASE("complexity counters") {
  GridOpCounters counters;
  const PointSet pts = uniform_random(40, 2, 3);
  const GridSpec grid({0.21, 0.33});
  const CountTensor cells = cell_counts(pts, grid, &counters);
  CHECK(counters.points_bucketed == 40);
  corner_counts(cells, &counters);
  CHECK(counters.corner_reads <= (4 - 1) * grid.cell_count());
}
