// Copyright 2026 The emptybox Authors
// SPDX-License-Identifier: Apache-2.0

#include "emptybox/gridcount.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace emptybox {

std::size_t GridSpec::extent_for(double cell_length) {
  if (!(cell_length > 0.0) || !std::isfinite(cell_length)) {
    throw std::invalid_argument("cell lengths must be positive and finite");
  }
  auto e = static_cast<std::size_t>(std::ceil(1.0 / cell_length));
  if (e == 0) e = 1;
  // drop a trailing cell whose interior lies outside the unit cube
  while (e > 1 && static_cast<double>(e - 1) * cell_length >= 1.0) --e;
  return e;
}

std::size_t GridSpec::bucket(double coordinate, double cell_length,
                             std::size_t extent) {
  auto idx = static_cast<long long>(std::floor(coordinate / cell_length));
  if (idx < 0) idx = 0;
  if (idx >= static_cast<long long>(extent)) {
    idx = static_cast<long long>(extent) - 1;
  }
  return static_cast<std::size_t>(idx);
}

GridSpec::GridSpec(std::vector<double> lengths)
    : dim(lengths.size()), cell_lengths(std::move(lengths)) {
  if (dim == 0) throw std::invalid_argument("grid needs at least one axis");
  extents.resize(dim);
  for (std::size_t a = 0; a < dim; ++a) {
    extents[a] = extent_for(cell_lengths[a]);
  }
}

std::size_t GridSpec::cell_count() const {
  std::size_t m = 1;
  for (std::size_t e : extents) m *= e;
  return m;
}

std::size_t GridSpec::cell_index(double coordinate, std::size_t axis) const {
  return bucket(coordinate, cell_lengths[axis], extents[axis]);
}

CountTensor::CountTensor(TensorKind k, std::vector<std::size_t> shape_in)
    : kind(k), shape(std::move(shape_in)) {
  std::size_t n = 1;
  for (std::size_t s : shape) n *= s;
  values.assign(n, 0);
}

std::size_t CountTensor::flatten(const std::vector<std::size_t>& idx) const {
  std::size_t flat = 0;
  for (std::size_t a = 0; a < shape.size(); ++a) {
    flat = flat * shape[a] + idx[a];
  }
  return flat;
}

std::int64_t CountTensor::total() const {
  return std::accumulate(values.begin(), values.end(), std::int64_t{0});
}

CountTensor cell_counts(const PointSet& points, const GridSpec& grid,
                        GridOpCounters* counters) {
  if (points.size() > 0 && points.dim() != grid.dim) {
    throw std::invalid_argument("points/grid dimension mismatch");
  }
  CountTensor out(TensorKind::cell, grid.extents);
  std::vector<std::size_t> idx(grid.dim);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t a = 0; a < grid.dim; ++a) {
      const double c = points.coord(i, a);
      if (c < 0.0 || c > 1.0) {
        throw std::invalid_argument("point outside the unit cube");
      }
      idx[a] = grid.cell_index(c, a);
    }
    ++out.values[out.flatten(idx)];
    if (counters) ++counters->points_bucketed;
  }
  return out;
}

CountTensor corner_counts(const CountTensor& cells, GridOpCounters* counters) {
  if (cells.kind != TensorKind::cell) {
    throw std::invalid_argument("corner_counts expects a cell tensor");
  }
  const std::size_t d = cells.shape.size();
  CountTensor out(TensorKind::corner, cells.shape);
  const std::size_t total = cells.values.size();

  // strides for row-major layout
  std::vector<std::size_t> strides(d, 1);
  for (std::size_t a = d; a-- > 1;) strides[a - 1] = strides[a] * cells.shape[a];

  std::vector<std::size_t> idx(d, 0);
  const auto masks = std::size_t{1} << d;
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::int64_t n = cells.values[flat];
    for (std::size_t b = 1; b < masks; ++b) {
      // skip terms reaching a negative index
      bool in_range = true;
      std::size_t off = 0;
      for (std::size_t a = 0; a < d; ++a) {
        if (b & (std::size_t{1} << a)) {
          if (idx[a] == 0) {
            in_range = false;
            break;
          }
          off += strides[a];
        }
      }
      if (!in_range) continue;
      const int parity = std::popcount(b) & 1;
      const std::int64_t term = out.values[flat - off];
      if (counters) ++counters->corner_reads;
      n += (parity ? 1 : -1) * term;  // (-1)^(pi(b)+1)
    }
    out.values[flat] = n;
    // advance the index odometer, last axis fastest
    for (std::size_t a = d; a-- > 0;) {
      if (++idx[a] < cells.shape[a]) break;
      idx[a] = 0;
    }
  }
  return out;
}

std::int64_t box_count(const CountTensor& corner,
                       const std::vector<std::size_t>& lower_cell,
                       const std::vector<std::size_t>& sizes) {
  if (corner.kind != TensorKind::corner) {
    throw std::invalid_argument("box_count expects a corner tensor");
  }
  const std::size_t d = corner.shape.size();
  if (lower_cell.size() != d || sizes.size() != d) {
    throw std::invalid_argument("index/size arity mismatch");
  }
  for (std::size_t a = 0; a < d; ++a) {
    if (sizes[a] == 0 || lower_cell[a] + sizes[a] > corner.shape[a]) {
      throw std::out_of_range("window does not fit in the tensor");
    }
  }
  // N(B0) = sum over b of (-1)^pi(b) N(j - b*M), zero at negative indices
  std::int64_t n = 0;
  const auto masks = std::size_t{1} << d;
  std::vector<std::size_t> idx(d);
  for (std::size_t b = 0; b < masks; ++b) {
    bool in_range = true;
    for (std::size_t a = 0; a < d; ++a) {
      const std::size_t j = lower_cell[a] + sizes[a] - 1;
      if (b & (std::size_t{1} << a)) {
        if (j < sizes[a]) {
          in_range = false;
          break;
        }
        idx[a] = j - sizes[a];
      } else {
        idx[a] = j;
      }
    }
    if (!in_range) continue;
    const int parity = std::popcount(b) & 1;
    n += (parity ? -1 : 1) * corner.at(idx);
  }
  return n;
}

CountTensor all_box_counts(const CountTensor& corner,
                           const std::vector<std::size_t>& sizes) {
  if (corner.kind != TensorKind::corner) {
    throw std::invalid_argument("all_box_counts expects a corner tensor");
  }
  const std::size_t d = corner.shape.size();
  if (sizes.size() != d) throw std::invalid_argument("size arity mismatch");
  std::vector<std::size_t> out_shape(d);
  for (std::size_t a = 0; a < d; ++a) {
    if (sizes[a] == 0) throw std::invalid_argument("window sizes must be >= 1");
    out_shape[a] = corner.shape[a] >= sizes[a] ? corner.shape[a] - sizes[a] + 1 : 0;
  }
  CountTensor out(TensorKind::window, out_shape);
  if (out.values.empty()) return out;

  std::vector<std::size_t> idx(d, 0);
  for (std::size_t flat = 0; flat < out.values.size(); ++flat) {
    out.values[flat] = box_count(corner, idx, sizes);
    for (std::size_t a = d; a-- > 0;) {
      if (++idx[a] < out_shape[a]) break;
      idx[a] = 0;
    }
  }
  return out;
}

}  // namespace emptybox
