// Copyright 2026 The emptybox Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef EMPTYBOX_GEOMETRY_HPP
#define EMPTYBOX_GEOMETRY_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace emptybox {

// A set of n points in R^d, coordinates stored row-major (point-major).
// All points carry exactly dim coordinates and every coordinate is finite.
class PointSet {
 public:
  PointSet() = default;
  PointSet(std::size_t dim, std::vector<double> coords);

  static PointSet from_rows(std::size_t dim,
                            const std::vector<std::vector<double>>& rows);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  bool empty() const { return coords_.empty(); }

  double coord(std::size_t i, std::size_t axis) const {
    return coords_[i * dim_ + axis];
  }
  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  const std::vector<double>& raw() const { return coords_; }

  void push_back(std::span<const double> p);

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

// Open axis-parallel box: the set {x : lo[i] < x[i] < hi[i]}. The interior is
// nonempty by construction (lo[i] < hi[i], all coordinates finite).
struct OpenBox {
  std::vector<double> lo;
  std::vector<double> hi;

  OpenBox(std::vector<double> lo_in, std::vector<double> hi_in);

  std::size_t dim() const { return lo.size(); }
  double extent(std::size_t axis) const { return hi[axis] - lo[axis]; }

  static OpenBox unit_cube(std::size_t dim);

  bool operator==(const OpenBox& other) const = default;
};

double volume(const OpenBox& box);

// Strict containment: boundary contact is not containment (boxes are open).
bool contains_point_strict(const OpenBox& box, std::span<const double> p);

// Per-axis scaling plus translation: x |-> (x - offset) * scale.
class AffineTransform {
 public:
  AffineTransform(std::vector<double> scale, std::vector<double> offset);

  static AffineTransform identity(std::size_t dim);

  std::size_t dim() const { return scale_.size(); }
  const std::vector<double>& scale() const { return scale_; }
  const std::vector<double>& offset() const { return offset_; }

  std::vector<double> apply(std::span<const double> p) const;
  std::vector<double> invert(std::span<const double> p) const;
  OpenBox invert_box(const OpenBox& box) const;

  // Product of 1/scale[i]; volumes in the source space are volumes in the
  // image space times this factor.
  double volume_factor() const;

 private:
  std::vector<double> scale_;
  std::vector<double> offset_;
};

struct Normalized {
  PointSet points;
  AffineTransform transform;
  std::size_t dropped = 0;  // points that landed exactly on the cube boundary
};

// Maps region onto [0,1]^d and the points with it. Points mapping exactly
// onto the boundary of the unit cube are dropped; they can never lie inside
// an open box. Throws std::invalid_argument if a point is outside the closure
// of region or region has a degenerate axis.
Normalized normalize_to_unit(const PointSet& points, const OpenBox& region);

}  // namespace emptybox

#endif  // EMPTYBOX_GEOMETRY_HPP
