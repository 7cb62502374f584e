// Copyright 2026 The emptybox Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EMPTYBOX_ORACLE_HPP
#define EMPTYBOX_ORACLE_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "emptybox/geometry.hpp"

namespace emptybox {

// Thrown when a brute-force oracle is asked to run beyond desk scale and the
// caller did not force it. The message carries a cost estimate.
class ScaleGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleResult {
  OpenBox box;
  double volume;
};

// Per axis, the ascending deduplicated set {region.lo, region.hi} union the
// point coordinates on that axis. Restricted boxes have all faces on these.
std::vector<std::vector<double>> candidate_coordinates(const PointSet& points,
                                                       const OpenBox& region);

// Human-readable estimate of the exhaustive enumeration cost.
std::string oracle_cost_estimate(std::size_t n, std::size_t d);

// Exhaustive maximum-volume empty box in the unit cube. Desk scale only
// (d <= 3 with n <= 12, or d == 4 with n <= 6) unless force is set.
OracleResult exact_max_empty_box(const PointSet& points, bool force = false);

// Planar oracle: for every candidate x-interval, the largest y-gap among
// points strictly inside the open strip. O(n^3) overall, n <= 4096 unless
// forced. Agrees with exact_max_empty_box on overlapping scales.
OracleResult exact_max_empty_rect_2d(const PointSet& points,
                                     bool force = false);

// True iff box is empty and no face can be pushed outward: every face lies on
// the region boundary or carries a point strictly interior to the other axes.
bool is_maximal_empty(const OpenBox& box, const PointSet& points,
                      const OpenBox& region);

// All restricted (maximal empty) boxes of the point set inside region.
std::vector<OpenBox> enumerate_restricted_boxes(const PointSet& points,
                                                const OpenBox& region,
                                                bool force = false);

// Exact maximum-volume empty hypercube in the unit cube: (min_i side_i)^d
// maximized over empty candidate boxes, realized at the box's lower corner.
OracleResult exact_max_empty_cube(const PointSet& points, bool force = false);

}  // namespace emptybox

#endif  // EMPTYBOX_ORACLE_HPP
