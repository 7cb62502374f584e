// Copyright 2026 The emptybox Authors
// SPDX-License-Identifier: Apache-2.0

#include "emptybox/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace emptybox {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " must be finite");
  }
}

}  // namespace

PointSet::PointSet(std::size_t dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
  if (dim_ == 0) {
    throw std::invalid_argument("PointSet dimension must be >= 1");
  }
  if (coords_.size() % dim_ != 0) {
    throw std::invalid_argument("coordinate count not a multiple of dim");
  }
  for (double v : coords_) require_finite(v, "point coordinate");
}

PointSet PointSet::from_rows(std::size_t dim,
                             const std::vector<std::vector<double>>& rows) {
  std::vector<double> flat;
  flat.reserve(dim * rows.size());
  for (const auto& row : rows) {
    if (row.size() != dim) {
      throw std::invalid_argument("point has wrong number of coordinates");
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return PointSet(dim, std::move(flat));
}

void PointSet::push_back(std::span<const double> p) {
  if (dim_ == 0) {
    dim_ = p.size();
    if (dim_ == 0) throw std::invalid_argument("point dimension must be >= 1");
  }
  if (p.size() != dim_) {
    throw std::invalid_argument("point has wrong number of coordinates");
  }
  for (double v : p) require_finite(v, "point coordinate");
  coords_.insert(coords_.end(), p.begin(), p.end());
}

OpenBox::OpenBox(std::vector<double> lo_in, std::vector<double> hi_in)
    : lo(std::move(lo_in)), hi(std::move(hi_in)) {
  if (lo.size() != hi.size() || lo.empty()) {
    throw std::invalid_argument("box lo/hi must have equal positive length");
  }
  for (std::size_t i = 0; i < lo.size(); ++i) {
    require_finite(lo[i], "box coordinate");
    require_finite(hi[i], "box coordinate");
    if (!(lo[i] < hi[i])) {
      throw std::invalid_argument("box must have lo[i] < hi[i] on every axis");
    }
  }
}

OpenBox OpenBox::unit_cube(std::size_t dim) {
  return OpenBox(std::vector<double>(dim, 0.0), std::vector<double>(dim, 1.0));
}

double volume(const OpenBox& box) {
  double v = 1.0;
  for (std::size_t i = 0; i < box.dim(); ++i) v *= box.extent(i);
  return v;
}

bool contains_point_strict(const OpenBox& box, std::span<const double> p) {
  if (p.size() != box.dim()) {
    throw std::invalid_argument("point/box dimension mismatch");
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(box.lo[i] < p[i] && p[i] < box.hi[i])) return false;
  }
  return true;
}

AffineTransform::AffineTransform(std::vector<double> scale,
                                 std::vector<double> offset)
    : scale_(std::move(scale)), offset_(std::move(offset)) {
  if (scale_.size() != offset_.size() || scale_.empty()) {
    throw std::invalid_argument("transform scale/offset length mismatch");
  }
  for (double s : scale_) {
    require_finite(s, "transform scale");
    if (!(s > 0.0)) throw std::invalid_argument("transform scale must be > 0");
  }
  for (double o : offset_) require_finite(o, "transform offset");
}

AffineTransform AffineTransform::identity(std::size_t dim) {
  return AffineTransform(std::vector<double>(dim, 1.0),
                         std::vector<double>(dim, 0.0));
}

std::vector<double> AffineTransform::apply(std::span<const double> p) const {
  if (p.size() != dim()) {
    throw std::invalid_argument("point/transform dimension mismatch");
  }
  std::vector<double> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[i] = (p[i] - offset_[i]) * scale_[i];
  }
  return out;
}

std::vector<double> AffineTransform::invert(std::span<const double> p) const {
  if (p.size() != dim()) {
    throw std::invalid_argument("point/transform dimension mismatch");
  }
  std::vector<double> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[i] = p[i] / scale_[i] + offset_[i];
  }
  return out;
}

OpenBox AffineTransform::invert_box(const OpenBox& box) const {
  return OpenBox(invert(box.lo), invert(box.hi));
}

double AffineTransform::volume_factor() const {
  double f = 1.0;
  for (double s : scale_) f /= s;
  return f;
}

Normalized normalize_to_unit(const PointSet& points, const OpenBox& region) {
  if (points.size() > 0 && points.dim() != region.dim()) {
    throw std::invalid_argument("points/region dimension mismatch");
  }
  const std::size_t d = region.dim();
  std::vector<double> scale(d), offset(d);
  for (std::size_t i = 0; i < d; ++i) {
    const double ext = region.extent(i);
    if (!(ext > 0.0)) {
      throw std::invalid_argument("degenerate region: zero extent on an axis");
    }
    scale[i] = 1.0 / ext;
    offset[i] = region.lo[i];
  }
  AffineTransform t(std::move(scale), std::move(offset));

  PointSet mapped;
  std::size_t dropped = 0;
  std::vector<double> img(d);
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto p = points.point(i);
    for (std::size_t a = 0; a < d; ++a) {
      if (p[a] < region.lo[a] || p[a] > region.hi[a]) {
        throw std::invalid_argument("point " + std::to_string(i) +
                                    " lies outside the region");
      }
    }
    img = t.apply(p);
    bool boundary = false;
    for (std::size_t a = 0; a < d; ++a) {
      if (img[a] < 0.0) img[a] = 0.0;  // fp undershoot of an in-region point
      if (img[a] > 1.0) img[a] = 1.0;
      if (img[a] == 0.0 || img[a] == 1.0) boundary = true;
    }
    if (boundary) {
      ++dropped;
      continue;
    }
    mapped.push_back(img);
  }
  if (mapped.empty()) {
    // keep the dimension even when every point was dropped or none given
    mapped = PointSet(d, {});
  }
  return Normalized{std::move(mapped), std::move(t), dropped};
}

}  // namespace emptybox
