// Copyright 2026 The emptybox Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EMPTYBOX_GRIDCOUNT_HPP
#define EMPTYBOX_GRIDCOUNT_HPP

#include <cstdint>
#include <vector>

#include "emptybox/geometry.hpp"

namespace emptybox {

// Grid anchored at the origin of the unit cube with fixed cell lengths per
// axis; cells clipped at the boundary are included while they still have
// nonempty interior.
struct GridSpec {
  std::size_t dim;
  std::vector<double> cell_lengths;
  std::vector<std::size_t> extents;  // ceil(1/x_i), trimmed of empty cells

  explicit GridSpec(std::vector<double> lengths);

  std::size_t cell_count() const;  // M(G)

  // Half-open bucketing [j*x, (j+1)*x): floor(p/x), clamped into the last
  // cell when fp lands at index == extent.
  std::size_t cell_index(double coordinate, std::size_t axis) const;

  // The shared primitives; every counting path in the project buckets
  // through these so conventions cannot drift apart.
  static std::size_t extent_for(double cell_length);
  static std::size_t bucket(double coordinate, double cell_length,
                            std::size_t extent);
};

enum class TensorKind { cell, corner, window };

// Dense d-dimensional integer tensor in row-major order (last axis fastest).
struct CountTensor {
  TensorKind kind;
  std::vector<std::size_t> shape;
  std::vector<std::int64_t> values;

  CountTensor(TensorKind k, std::vector<std::size_t> shape_in);

  std::size_t flatten(const std::vector<std::size_t>& idx) const;
  std::int64_t at(const std::vector<std::size_t>& idx) const {
    return values[flatten(idx)];
  }
  std::int64_t total() const;
};

// Optional instrumentation for the complexity-guard tests.
struct GridOpCounters {
  std::uint64_t points_bucketed = 0;
  std::uint64_t corner_reads = 0;
};

// Number of points in each cell; points must lie in [0,1]^d.
CountTensor cell_counts(const PointSet& points, const GridSpec& grid,
                        GridOpCounters* counters = nullptr);

// Corner box numbers N(i_1..i_d) = points in cells (0..i_1) x ... x (0..i_d),
// via the inclusion-exclusion recurrence with N(.) = 0 at negative indices.
CountTensor corner_counts(const CountTensor& cells,
                          GridOpCounters* counters = nullptr);

// Points in the window of `sizes` cells anchored at lower_cell, extracted
// from corner numbers with 2^d inclusion-exclusion terms.
std::int64_t box_count(const CountTensor& corner,
                       const std::vector<std::size_t>& lower_cell,
                       const std::vector<std::size_t>& sizes);

// Q(i) = box_count(corner, i, sizes) for every anchor where the window fits;
// output shape is extents - sizes + 1 per axis.
CountTensor all_box_counts(const CountTensor& corner,
                           const std::vector<std::size_t>& sizes);

}  // namespace emptybox

#endif  // EMPTYBOX_GRIDCOUNT_HPP
