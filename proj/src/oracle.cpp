// Copyright 2026 The emptybox Authors
// SPDX-License-Identifier: Apache-2.0

#include "emptybox/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>

namespace emptybox {

namespace {

void check_unit_cube(const PointSet& points) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t a = 0; a < points.dim(); ++a) {
      const double c = points.coord(i, a);
      if (c < 0.0 || c > 1.0) {
        throw std::invalid_argument("oracle input must lie in the unit cube");
      }
    }
  }
}

void check_scale_guard(std::size_t n, std::size_t d, bool force) {
  const bool ok = (d <= 3 && n <= 12) || (d == 4 && n <= 6);
  if (ok || force) return;
  throw ScaleGuardError("brute-force oracle refused at n=" + std::to_string(n) +
                        ", d=" + std::to_string(d) + " (" +
                        oracle_cost_estimate(n, d) +
                        "); pass force/--force to run anyway");
}

// Shared exhaustive walk over candidate boxes. visit(lo, hi, inside_count)
// is called for every box whose interior point count was fully resolved;
// prune(partial_volume) may cut subtrees that cannot matter.
struct BoxEnumerator {
  const PointSet& points;
  const std::vector<std::vector<double>>& cand;
  std::size_t d;

  std::vector<double> lo, hi;
  std::vector<std::vector<std::size_t>> alive;  // point indices per depth

  // return true to skip the subtree rooted at this (lo, hi) choice
  std::function<bool(double partial_volume, double axis_extent)> prune;
  std::function<void(const std::vector<double>&, const std::vector<double>&,
                     std::size_t)>
      visit;

  void run() {
    lo.assign(d, 0.0);
    hi.assign(d, 0.0);
    alive.assign(d + 1, {});
    alive[0].resize(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) alive[0][i] = i;
    descend(0, 1.0);
  }

  void descend(std::size_t axis, double partial_volume) {
    if (axis == d) {
      visit(lo, hi, alive[d].size());
      return;
    }
    const auto& values = cand[axis];
    for (std::size_t ai = 0; ai + 1 < values.size(); ++ai) {
      for (std::size_t bi = ai + 1; bi < values.size(); ++bi) {
        lo[axis] = values[ai];
        hi[axis] = values[bi];
        const double extent = hi[axis] - lo[axis];
        const double vol = partial_volume * extent;
        if (prune && prune(vol, extent)) continue;
        auto& next = alive[axis + 1];
        next.clear();
        for (std::size_t idx : alive[axis]) {
          const double c = points.coord(idx, axis);
          if (lo[axis] < c && c < hi[axis]) next.push_back(idx);
        }
        descend(axis + 1, vol);
      }
    }
  }
};

}  // namespace

std::vector<std::vector<double>> candidate_coordinates(const PointSet& points,
                                                       const OpenBox& region) {
  if (points.size() > 0 && points.dim() != region.dim()) {
    throw std::invalid_argument("points/region dimension mismatch");
  }
  const std::size_t d = region.dim();
  std::vector<std::vector<double>> cand(d);
  for (std::size_t a = 0; a < d; ++a) {
    cand[a].push_back(region.lo[a]);
    cand[a].push_back(region.hi[a]);
    for (std::size_t i = 0; i < points.size(); ++i) {
      cand[a].push_back(points.coord(i, a));
    }
    std::sort(cand[a].begin(), cand[a].end());
    cand[a].erase(std::unique(cand[a].begin(), cand[a].end()), cand[a].end());
  }
  return cand;
}

std::string oracle_cost_estimate(std::size_t n, std::size_t d) {
  const double pairs = static_cast<double>(n + 2) * (n + 1) / 2.0;
  const double boxes = std::pow(pairs, static_cast<double>(d));
  char buf[128];
  std::snprintf(buf, sizeof(buf), "~%.3g candidate boxes, ~%.3g point tests",
                boxes, boxes * static_cast<double>(n ? n : 1));
  return buf;
}

OracleResult exact_max_empty_box(const PointSet& points, bool force) {
  check_unit_cube(points);
  const std::size_t d = points.dim() == 0 ? 2 : points.dim();
  check_scale_guard(points.size(), d, force);
  const OpenBox cube = OpenBox::unit_cube(d);
  const auto cand = candidate_coordinates(points, cube);

  double best_vol = 0.0;
  std::optional<OpenBox> best;
  BoxEnumerator en{points, cand, d};
  en.prune = [&](double vol, double) { return vol <= best_vol; };
  en.visit = [&](const std::vector<double>& lo, const std::vector<double>& hi,
                 std::size_t inside) {
    if (inside != 0) return;
    OpenBox b(lo, hi);
    const double v = volume(b);
    if (v > best_vol) {
      best_vol = v;
      best = std::move(b);
    }
  };
  en.run();
  if (!best) {
    // only possible when pruning rejected everything: no empty box at all
    // cannot happen (sub-cells between candidates are always empty)
    throw std::logic_error("exhaustive search found no empty box");
  }
  return OracleResult{*best, best_vol};
}

OracleResult exact_max_empty_rect_2d(const PointSet& points, bool force) {
  if (points.size() > 0 && points.dim() != 2) {
    throw std::invalid_argument("exact_max_empty_rect_2d needs d = 2");
  }
  check_unit_cube(points);
  if (points.size() > 4096 && !force) {
    throw ScaleGuardError("planar oracle refused at n=" +
                          std::to_string(points.size()) +
                          " (" + oracle_cost_estimate(points.size(), 2) +
                          "); pass force/--force to run anyway");
  }
  const std::size_t n = points.size();
  const OpenBox cube = OpenBox::unit_cube(2);
  const auto cand = candidate_coordinates(points, cube);
  const auto& xs = cand[0];

  // points ordered by y once; each strip is then a filtered linear walk
  std::vector<std::size_t> by_y(n);
  for (std::size_t i = 0; i < n; ++i) by_y[i] = i;
  std::sort(by_y.begin(), by_y.end(), [&](std::size_t a, std::size_t b) {
    return points.coord(a, 1) < points.coord(b, 1);
  });

  double best_area = 0.0;
  double bx0 = 0, bx1 = 1, by0 = 0, by1 = 1;
  for (std::size_t ai = 0; ai + 1 < xs.size(); ++ai) {
    for (std::size_t bi = ai + 1; bi < xs.size(); ++bi) {
      const double x0 = xs[ai], x1 = xs[bi];
      const double width = x1 - x0;
      if (width <= best_area) continue;  // area <= width * 1
      double prev = 0.0;
      double gap = 0.0, gap_lo = 0.0;
      for (std::size_t r = 0; r < n; ++r) {
        const std::size_t i = by_y[r];
        const double px = points.coord(i, 0);
        if (!(x0 < px && px < x1)) continue;
        const double py = points.coord(i, 1);
        if (py - prev > gap) {
          gap = py - prev;
          gap_lo = prev;
        }
        prev = py;
      }
      if (1.0 - prev > gap) {
        gap = 1.0 - prev;
        gap_lo = prev;
      }
      const double area = width * gap;
      if (area > best_area) {
        best_area = area;
        bx0 = x0;
        bx1 = x1;
        by0 = gap_lo;
        by1 = gap_lo + gap;
      }
    }
  }
  return OracleResult{OpenBox({bx0, by0}, {bx1, by1}), best_area};
}

bool is_maximal_empty(const OpenBox& box, const PointSet& points,
                      const OpenBox& region) {
  if (box.dim() != region.dim() ||
      (points.size() > 0 && points.dim() != box.dim())) {
    throw std::invalid_argument("box/points/region dimension mismatch");
  }
  const std::size_t d = box.dim();
  for (std::size_t a = 0; a < d; ++a) {
    if (box.lo[a] < region.lo[a] || box.hi[a] > region.hi[a]) {
      throw std::invalid_argument("box must lie inside the region");
    }
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (contains_point_strict(box, points.point(i))) return false;
  }
  // every face must be pinned by the region boundary or a strictly interior
  // point contact; corner/edge contacts do not pin an open box
  for (std::size_t a = 0; a < d; ++a) {
    for (int side = 0; side < 2; ++side) {
      const double face = side == 0 ? box.lo[a] : box.hi[a];
      const double wall = side == 0 ? region.lo[a] : region.hi[a];
      if (face == wall) continue;
      bool pinned = false;
      for (std::size_t i = 0; i < points.size() && !pinned; ++i) {
        if (points.coord(i, a) != face) continue;
        bool interior = true;
        for (std::size_t j = 0; j < d; ++j) {
          if (j == a) continue;
          const double c = points.coord(i, j);
          if (!(box.lo[j] < c && c < box.hi[j])) {
            interior = false;
            break;
          }
        }
        pinned = interior;
      }
      if (!pinned) return false;
    }
  }
  return true;
}

std::vector<OpenBox> enumerate_restricted_boxes(const PointSet& points,
                                                const OpenBox& region,
                                                bool force) {
  const std::size_t d = region.dim();
  check_scale_guard(points.size(), d, force);
  const auto cand = candidate_coordinates(points, region);

  std::vector<OpenBox> out;
  BoxEnumerator en{points, cand, d};
  en.visit = [&](const std::vector<double>& lo, const std::vector<double>& hi,
                 std::size_t inside) {
    if (inside != 0) {
      return;
    }
    OpenBox b(lo, hi);
    if (is_maximal_empty(b, points, region)) out.push_back(std::move(b));
  };
  en.run();
  return out;
}

OracleResult exact_max_empty_cube(const PointSet& points, bool force) {
  check_unit_cube(points);
  const std::size_t d = points.dim() == 0 ? 2 : points.dim();
  check_scale_guard(points.size(), d, force);
  const OpenBox cube = OpenBox::unit_cube(d);
  const auto cand = candidate_coordinates(points, cube);

  double best_side = 0.0;
  std::vector<double> best_lo;
  BoxEnumerator en{points, cand, d};
  // the min side can only shrink as more axes are fixed
  en.prune = [&](double, double extent) { return extent <= best_side; };
  en.visit = [&](const std::vector<double>& lo, const std::vector<double>& hi,
                 std::size_t inside) {
    if (inside != 0) return;
    double side = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < d; ++a) side = std::min(side, hi[a] - lo[a]);
    if (side > best_side) {
      best_side = side;
      best_lo = lo;
    }
  };
  en.run();
  if (best_lo.empty()) {
    throw std::logic_error("exhaustive search found no empty box");
  }
  std::vector<double> hi(d);
  for (std::size_t a = 0; a < d; ++a) hi[a] = best_lo[a] + best_side;
  OpenBox b(best_lo, hi);
  return OracleResult{b, std::pow(best_side, static_cast<double>(d))};
}

}  // namespace emptybox
