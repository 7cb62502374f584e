// Copyright 2026 The emptybox Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EMPTYBOX_APPROX_HPP
#define EMPTYBOX_APPROX_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "emptybox/geometry.hpp"

namespace emptybox {

// Parameter bundle of the (1-eps)-approximation: delta = eps_eff/(2d),
// m = ceil(1/delta), a = 1/(1-delta), and the unique k with
// a^(k-1) <= n+1 < a^k (box mode) or a^(k-1) <= n^(1/d)+1 < a^k (cube mode).
// The canonical scale ladder is X_i = a^i / a^(k+1), i = 0..k-1.
struct ApproxParams {
  std::size_t n = 0;
  int dim = 0;
  double epsilon = 0.0;
  double epsilon_effective = 0.0;  // after optional jitter
  double delta = 0.0;
  int m = 0;
  double a = 0.0;
  int k = 0;
  bool cube_mode = false;
  std::vector<double> ladder;
  std::uint64_t seed = 0;
  bool jitter = false;
};

// With jitter, epsilon_effective is drawn uniformly from
// [(1 - 1/(2d)) * epsilon, epsilon] using the seed; k is corrected by direct
// multiplication so the defining inequality holds in working precision.
ApproxParams derive_params(std::size_t n, int d, double epsilon,
                           std::uint64_t seed = 0, bool jitter = false);
ApproxParams derive_cube_params(std::size_t n, int d, double epsilon,
                                std::uint64_t seed = 0, bool jitter = false);

// All exponent tuples y in {0..k-1}^d with sum(y) >= dk-k-d, lexicographic.
// The count is at most C(k+d, d); call only for desk-scale parameters.
std::vector<std::vector<int>> enumerate_large_exponents(
    const ApproxParams& params);

struct SearchStats {
  std::uint64_t canonical_boxes_enumerated = 0;
  std::uint64_t placements_tested = 0;
  std::uint64_t max_placements_single_grid = 0;
  double elapsed_seconds = 0.0;
  std::uint64_t seed = 0;
  double epsilon_effective = 0.0;
  int k = 0;
};

struct SearchResult {
  OpenBox box;
  double volume;
  SearchStats stats;
};

enum class PlacementEngine {
  automatic,  // dense counting for small grids, sparse coverage otherwise
  dense,      // cell -> corner -> window counts over the full grid
  sparse      // first-uncovered-anchor search over per-point blocked boxes
};

enum class SearchStrategy {
  level_ascent,  // bracket + monotone ascent; one failing-level scan
  level_descent  // scan sum levels from the top; reference implementation
};

struct SearchOptions {
  int threads = 1;
  PlacementEngine engine = PlacementEngine::automatic;
  SearchStrategy strategy = SearchStrategy::level_ascent;
};

// Best placement of the canonical box with side lengths X_{y_i}: the grid
// anchor is the lexicographically smallest one whose m^d-cell window count is
// zero and whose box lies inside the unit cube. nullopt when every anchor is
// blocked. Points lying exactly on the cube boundary are ignored.
std::optional<OpenBox> search_canonical_box(
    const PointSet& points, std::span<const int> exponents,
    const ApproxParams& params,
    PlacementEngine engine = PlacementEngine::automatic);

// The (1-eps)-approximation for the maximum empty box: volume at least
// (1-eps) times the optimum whenever no input point lies on a canonical grid
// hyperplane (jitter makes that almost sure).
SearchResult approx_max_empty_box(const PointSet& points, double epsilon,
                                  std::uint64_t seed = 0, bool jitter = true,
                                  const SearchOptions& options = {});

// The faster hypercube variant: one ladder of k canonical hypercubes.
SearchResult approx_max_empty_cube(const PointSet& points, double epsilon,
                                   std::uint64_t seed = 0, bool jitter = true,
                                   const SearchOptions& options = {});

}  // namespace emptybox

#endif  // EMPTYBOX_APPROX_HPP
