// Copyright 2026 The emptybox Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EMPTYBOX_POINTGEN_HPP
#define EMPTYBOX_POINTGEN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "emptybox/geometry.hpp"

namespace emptybox {

// First m primes, ascending (2, 3, 5, ...).
std::vector<std::uint64_t> first_primes(std::size_t m);

// Base-p radical inverse of k: mirror k's base-p digits across the radix
// point. Accumulated in integer arithmetic, converted to double once.
double radical_inverse(std::uint64_t k, std::uint64_t base);

// Van der Corput set: (k/n, binary radical inverse of k), k = 0..n-1.
PointSet van_der_corput(std::size_t n);

// Halton-Hammersley set in [0,1)^d: coordinate 0 is k/n, coordinate i is the
// radical inverse of k in base p_i (the i-th prime), i = 1..d-1.
PointSet halton_hammersley(std::size_t n, std::size_t d);

// The restricted-box lower-bound construction: for each cyclic axis group
// {+x_i, -x_j}, j = i mod d + 1, emits points k*e_i - (n_i+1-k)*e_j,
// k = 1..n_i. Raw coordinates in R^d. Requires d >= 2 and every n_i >= 2.
PointSet restricted_lb_construction(std::size_t d,
                                    const std::vector<std::size_t>& counts);

// Per-axis affine map of [min_i, max_i] onto [margin, 1-margin]; all images
// strictly interior to the unit cube. margin in (0, 0.5).
PointSet embed_in_unit_cube(const PointSet& points, double margin);

// Default margin used by the CLI: 1/(2(n+1)).
double default_embed_margin(std::size_t n);

// The k^d interior vertices of the uniform (k+1)^d grid on the unit cube:
// coordinates j/(k+1), j = 1..k, per axis.
PointSet grid_vertices(std::size_t k, std::size_t d);

enum class TightConfig {
  two_point_xi,       // {(xi, 1-xi), (1-xi, xi)}, xi = (3 - sqrt 5)/2
  four_point_quarter  // {(1/4,1/2), (1/2,1/4), (1/2,3/4), (3/4,1/2)}
};

TightConfig tight_config_from_string(const std::string& name);
PointSet known_tight_configs(TightConfig name);

// n i.i.d. uniform points in (0,1)^d. Deterministic for a fixed seed:
// mt19937_64(seed), each coordinate ((rng() >> 11) + 0.5) * 2^-53.
PointSet uniform_random(std::size_t n, std::size_t d, std::uint64_t seed);

}  // namespace emptybox

#endif  // EMPTYBOX_POINTGEN_HPP
