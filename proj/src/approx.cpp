// Copyright 2026 The emptybox Authors
// SPDX-License-Identifier: Apache-2.0

#include "emptybox/approx.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>
#include <thread>

#include "emptybox/gridcount.hpp"

namespace emptybox {

namespace {

constexpr double kFitTolerance = 1e-12;  // cube-containment slack for anchors
constexpr std::size_t kDenseCellLimit = 4096;

double pow_int(double base, long long e) {
  double result = 1.0;
  double acc = base;
  while (e > 0) {
    if (e & 1) result *= acc;
    acc *= acc;
    e >>= 1;
  }
  return result;
}

double draw_unit(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

ApproxParams derive_common(std::size_t n, int d, double epsilon,
                           std::uint64_t seed, bool jitter, bool cube_mode) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in (0,1)");
  }
  if (d < 2) throw std::invalid_argument("dimension must be >= 2");
  if (d > 64) throw std::invalid_argument("dimension must be <= 64");

  ApproxParams p;
  p.n = n;
  p.dim = d;
  p.epsilon = epsilon;
  p.seed = seed;
  p.jitter = jitter;
  p.cube_mode = cube_mode;

  p.epsilon_effective = epsilon;
  if (jitter) {
    std::mt19937_64 rng(seed);
    const double span = epsilon / (2.0 * d);
    p.epsilon_effective = epsilon - span + draw_unit(rng) * span;
  }
  p.delta = p.epsilon_effective / (2.0 * d);
  p.m = static_cast<int>(std::ceil(2.0 * d / p.epsilon_effective));
  p.a = 1.0 / (1.0 - p.delta);

  const double bound =
      cube_mode ? std::pow(static_cast<double>(n), 1.0 / d) + 1.0
                : static_cast<double>(n) + 1.0;
  int k = 1;
  if (bound > 1.0) {
    k = std::max<int>(
        1, static_cast<int>(std::floor(std::log(bound) / std::log(p.a))) + 1);
  }
  while (k > 1 && pow_int(p.a, k - 1) > bound) --k;
  while (pow_int(p.a, k) <= bound) ++k;
  if (!(pow_int(p.a, k - 1) <= bound && bound < pow_int(p.a, k))) {
    throw std::logic_error("ladder exponent fixup failed");
  }
  p.k = k;

  const double denom = pow_int(p.a, k + 1);
  p.ladder.resize(k);
  for (int i = 0; i < k; ++i) p.ladder[i] = pow_int(p.a, i) / denom;
  return p;
}

// ---------------------------------------------------------------------------
// Per-run search context: interior points in a canonical order (sorted by the
// last axis) and, for every ladder index y, the grid geometry plus the bucket
// index of every point on every axis.
// ---------------------------------------------------------------------------

struct Ctx {
  const ApproxParams* params = nullptr;
  int d = 0;
  int m = 0;
  int k = 0;
  std::size_t n_interior = 0;
  std::vector<double> pts;  // interior points, row-major
  PointSet interior_ps;     // the same points as a PointSet (dense engine)

  std::vector<double> cell;          // per y: ladder[y]/m
  std::vector<std::size_t> extent;   // per y
  std::vector<long long> max_anchor; // per y: largest valid anchor index
  // cells[axis][y * n_interior + i]
  std::vector<std::vector<std::int32_t>> cells;
  // order[axis]: interior indices sorted by that axis's coordinate
  std::vector<std::vector<std::int32_t>> order;
  long long max_anchor_range = 1;  // max over y of max_anchor[y] + 1

  double coord(std::size_t i, int axis) const { return pts[i * d + axis]; }

  std::uint64_t anchors_of(const int* y) const {
    std::uint64_t total = 1;
    for (int a = 0; a < d; ++a) {
      total = mul_saturating(total,
                             static_cast<std::uint64_t>(max_anchor[y[a]] + 1));
    }
    return total;
  }

  static std::uint64_t mul_saturating(std::uint64_t a, std::uint64_t b) {
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    if (b != 0 && a > kMax / b) return kMax;
    return a * b;
  }
};

Ctx build_context(const PointSet& points, const ApproxParams& params) {
  const int d = params.dim;
  if (points.size() > 0 && points.dim() != static_cast<std::size_t>(d)) {
    throw std::invalid_argument("points/parameter dimension mismatch");
  }
  Ctx ctx;
  ctx.params = &params;
  ctx.d = d;
  ctx.m = params.m;
  ctx.k = params.k;

  // boundary points can be safely ignored: an open box inside the cube can
  // never strictly contain them, and counting them would block placements
  std::vector<std::size_t> interior;
  interior.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool inside = true;
    for (int a = 0; a < d; ++a) {
      const double c = points.coord(i, a);
      if (c < 0.0 || c > 1.0) {
        throw std::invalid_argument("points must lie in the unit cube");
      }
      if (c == 0.0 || c == 1.0) inside = false;
    }
    if (inside) interior.push_back(i);
  }
  ctx.n_interior = interior.size();
  ctx.pts.resize(ctx.n_interior * d);
  for (std::size_t r = 0; r < interior.size(); ++r) {
    for (int a = 0; a < d; ++a) {
      ctx.pts[r * d + a] = points.coord(interior[r], a);
    }
  }
  ctx.interior_ps = PointSet(static_cast<std::size_t>(d), ctx.pts);
  ctx.order.assign(d, {});
  for (int a = 0; a < d; ++a) {
    auto& ord = ctx.order[a];
    ord.resize(ctx.n_interior);
    for (std::size_t i = 0; i < ctx.n_interior; ++i) {
      ord[i] = static_cast<std::int32_t>(i);
    }
    std::stable_sort(ord.begin(), ord.end(),
                     [&](std::int32_t x, std::int32_t z) {
                       return ctx.coord(x, a) < ctx.coord(z, a);
                     });
  }

  const int k = params.k;
  ctx.cell.resize(k);
  ctx.extent.resize(k);
  ctx.max_anchor.resize(k);
  for (int y = 0; y < k; ++y) {
    const double X = params.ladder[y];
    const double c = X / params.m;
    ctx.cell[y] = c;
    ctx.extent[y] = GridSpec::extent_for(c);
    long long cap = static_cast<long long>(ctx.extent[y]) - params.m;
    auto fits = [&](long long i) {
      return i >= 0 && i <= cap &&
             static_cast<double>(i) * c + X <= 1.0 + kFitTolerance;
    };
    long long i = std::min<long long>(
        cap, static_cast<long long>(std::floor((1.0 + kFitTolerance - X) / c)));
    while (i > 0 && !fits(i)) --i;
    while (fits(i + 1)) ++i;
    if (!fits(0)) {
      throw std::logic_error("canonical box does not fit in the unit cube");
    }
    ctx.max_anchor[y] = i;
    ctx.max_anchor_range = std::max(ctx.max_anchor_range, i + 1);
  }

  ctx.cells.assign(d, {});
  for (int a = 0; a < d; ++a) {
    ctx.cells[a].resize(static_cast<std::size_t>(k) * ctx.n_interior);
    for (int y = 0; y < k; ++y) {
      const double c = ctx.cell[y];
      const std::size_t e = ctx.extent[y];
      auto* row = ctx.cells[a].data() + static_cast<std::size_t>(y) * ctx.n_interior;
      for (std::size_t i = 0; i < ctx.n_interior; ++i) {
        row[i] = static_cast<std::int32_t>(GridSpec::bucket(ctx.coord(i, a), c, e));
      }
    }
  }
  return ctx;
}

// ---------------------------------------------------------------------------
// Placement test for a single exponent tuple.
// ---------------------------------------------------------------------------

// Range-add segment tree tracking the minimum cover count, with descent to
// the leftmost zero-cover position. Operations run inside the left-aligned
// subtree that covers the current sweep's range, so small sweeps stay cheap
// even when the tree was sized for the widest grid of the run.
struct CoverTree {
  int size = 0;
  int vroot = 1, vsize = 0;  // subtree used by the current sweep
  std::vector<std::int32_t> mn, lazy;

  void reset(int max_range) {
    size = 1;
    while (size < max_range) size <<= 1;
    mn.assign(static_cast<std::size_t>(2) * size, 0);
    lazy.assign(static_cast<std::size_t>(2) * size, 0);
    vroot = 1;
    vsize = size;
  }

  void set_range(int range) {
    vsize = 1;
    while (vsize < range) vsize <<= 1;
    vroot = size / vsize;  // left-aligned subtree covering [0, vsize)
  }

  void add(int node, int node_lo, int node_hi, int lo, int hi, int delta) {
    if (hi < node_lo || node_hi < lo) return;
    if (lo <= node_lo && node_hi <= hi) {
      mn[node] += delta;
      lazy[node] += delta;
      return;
    }
    const int mid = node_lo + (node_hi - node_lo) / 2;
    add(2 * node, node_lo, mid, lo, hi, delta);
    add(2 * node + 1, mid + 1, node_hi, lo, hi, delta);
    mn[node] = std::min(mn[2 * node], mn[2 * node + 1]) + lazy[node];
  }

  void add(int lo, int hi, int delta) {
    add(vroot, 0, vsize - 1, lo, hi, delta);
  }

  // smallest position with cover 0, or -1; positions past the real range
  // must be blanked with a sentinel +1 by the caller
  int first_zero() const {
    if (mn[vroot] != 0) return -1;
    int node = vroot, lo = 0, hi = vsize - 1;
    int acc = 0;
    while (lo != hi) {
      acc += lazy[node];
      const int mid = lo + (hi - lo) / 2;
      if (mn[2 * node] + acc == 0) {
        node = 2 * node;
        hi = mid;
      } else {
        node = 2 * node + 1;
        lo = mid + 1;
      }
    }
    return lo;
  }
};

struct Scratch {
  // blocked anchor boxes, compacted over active points in canonical order
  std::vector<std::vector<std::int32_t>> blo, bhi;
  std::vector<std::vector<std::int32_t>> act;  // active lists per depth
  std::vector<long long> anchor;
  CoverTree tree;
  std::vector<std::int32_t> starts, ends;  // sweep event orders

  explicit Scratch(const Ctx& ctx) {
    blo.assign(ctx.d, std::vector<std::int32_t>(ctx.n_interior));
    bhi.assign(ctx.d, std::vector<std::int32_t>(ctx.n_interior));
    act.assign(ctx.d + 1, {});
    for (auto& v : act) v.reserve(ctx.n_interior);
    anchor.assign(ctx.d, 0);
    starts.reserve(ctx.n_interior);
    ends.reserve(ctx.n_interior);
    tree.reset(static_cast<int>(ctx.max_anchor_range));
  }
};

struct TupleVerdict {
  bool success = false;
  std::vector<long long> anchor;  // filled only when an anchor was requested
};

// The bottom two axes are solved by a sweep along the first of them with a
// cover-count tree over the second: coverage can only break where a box ends,
// so candidates are x = 0 and every bhi+1, and each box enters and leaves the
// tree exactly once. O(active log) per call.
bool sweep_last_two(Scratch& s, const long long* A, int depth,
                    const std::vector<std::int32_t>& act, long long* out) {
  const auto& xlo = s.blo[depth];
  const auto& xhi = s.bhi[depth];
  const auto& ylo = s.blo[depth + 1];
  const auto& yhi = s.bhi[depth + 1];
  const int range = static_cast<int>(A[depth + 1]) + 1;

  // the tree is kept all-zero between sweeps; blank unreachable positions
  s.tree.set_range(range);
  if (range < s.tree.vsize) s.tree.add(range, s.tree.vsize - 1, 1);

  auto& starts = s.starts;
  auto& ends = s.ends;
  starts.assign(act.begin(), act.end());
  ends.assign(act.begin(), act.end());
  std::sort(starts.begin(), starts.end(),
            [&](std::int32_t a, std::int32_t b) { return xlo[a] < xlo[b]; });
  std::sort(ends.begin(), ends.end(),
            [&](std::int32_t a, std::int32_t b) { return xhi[a] < xhi[b]; });

  bool found = false;
  long long found_x = 0;
  int found_y = 0;
  std::size_t si = 0, ei = 0;
  long long x = 0;
  while (x <= A[depth]) {
    while (si < starts.size() && xlo[starts[si]] <= x) {
      s.tree.add(ylo[starts[si]], yhi[starts[si]], 1);
      ++si;
    }
    while (ei < ends.size() && xhi[ends[ei]] < x) {
      s.tree.add(ylo[ends[ei]], yhi[ends[ei]], -1);
      ++ei;
    }
    const int pos = s.tree.first_zero();
    if (pos >= 0) {
      found = true;
      found_x = x;
      found_y = pos;
      break;
    }
    // covered: nothing changes until the next box expires
    if (ei >= ends.size()) break;
    x = static_cast<long long>(xhi[ends[ei]]) + 1;
  }
  for (std::size_t j = 0; j < si; ++j) {
    s.tree.add(ylo[starts[j]], yhi[starts[j]], -1);
  }
  for (std::size_t j = 0; j < ei; ++j) {
    s.tree.add(ylo[ends[j]], yhi[ends[j]], 1);
  }
  if (range < s.tree.vsize) s.tree.add(range, s.tree.vsize - 1, -1);
  if (found) {
    out[depth] = found_x;
    out[depth + 1] = found_y;
  }
  return found;
}

// Lexicographically first anchor in prod [0, A_t] not covered by the blocked
// boxes listed in `act` (sorted by blo[last] via the per-axis point orders).
bool first_uncovered(const Ctx& ctx, Scratch& s, const long long* A, int depth,
                     const std::vector<std::int32_t>& act, long long* out) {
  const int last = ctx.d - 1;
  const auto& blo = s.blo[depth];
  const auto& bhi = s.bhi[depth];
  if (act.empty()) {
    for (int t = depth; t < ctx.d; ++t) out[t] = 0;
    return true;
  }
  // the event sweep beats per-strip filtering once the active set is large;
  // both compute the identical lexicographic answer
  if (depth == last - 1 && act.size() > 256) {
    return sweep_last_two(s, A, depth, act, out);
  }
  if (depth == last) {
    long long frontier = 0;
    for (const std::int32_t j : act) {
      if (blo[j] > frontier) break;
      if (bhi[j] + 1 > frontier) frontier = bhi[j] + 1;
      if (frontier > A[depth]) return false;
    }
    if (frontier > A[depth]) return false;
    out[depth] = frontier;
    return true;
  }
  long long x = 0;
  while (x <= A[depth]) {
    auto& sub = s.act[depth + 1];
    sub.clear();
    long long jump = std::numeric_limits<long long>::max();
    for (const std::int32_t j : act) {
      if (blo[j] <= x && x <= bhi[j]) {
        sub.push_back(j);
        if (bhi[j] < jump) jump = bhi[j];
      }
    }
    if (sub.empty()) {
      out[depth] = x;
      for (int t = depth + 1; t < ctx.d; ++t) out[t] = 0;
      return true;
    }
    if (first_uncovered(ctx, s, A, depth + 1, sub, out)) {
      out[depth] = x;
      return true;
    }
    x = jump + 1;  // active set can only grow until the first box expires
  }
  return false;
}

TupleVerdict test_tuple(const Ctx& ctx, Scratch& s, const int* y,
                        bool want_anchor, PlacementEngine engine) {
  const int d = ctx.d;
  const int m = ctx.m;

  constexpr auto kMaxU64 = std::numeric_limits<std::uint64_t>::max();
  std::array<long long, 64> A{};
  std::uint64_t total_anchors = 1;
  std::uint64_t grid_cells = 1;
  for (int a = 0; a < d; ++a) {
    A[a] = ctx.max_anchor[y[a]];
    total_anchors =
        Ctx::mul_saturating(total_anchors, static_cast<std::uint64_t>(A[a] + 1));
    grid_cells = Ctx::mul_saturating(grid_cells,
                                     static_cast<std::uint64_t>(ctx.extent[y[a]]));
  }
  const bool counts_saturated = total_anchors == kMaxU64;

  const bool dense = engine == PlacementEngine::dense ||
                     (engine == PlacementEngine::automatic &&
                      grid_cells <= kDenseCellLimit);

  if (dense) {
    std::vector<double> lengths(d);
    for (int a = 0; a < d; ++a) lengths[a] = ctx.cell[y[a]];
    GridSpec grid(std::move(lengths));
    const CountTensor cellsT = cell_counts(ctx.interior_ps, grid);
    const CountTensor corner = corner_counts(cellsT);
    const CountTensor window =
        all_box_counts(corner, std::vector<std::size_t>(d, m));
    std::vector<std::size_t> idx(d, 0);
    while (true) {
      if (window.at(idx) == 0) {
        TupleVerdict v;
        v.success = true;
        if (want_anchor) {
          v.anchor.assign(idx.begin(), idx.end());
        }
        return v;
      }
      int a = d;
      bool done = false;
      while (a-- > 0) {
        if (static_cast<long long>(idx[a]) < A[a]) {
          ++idx[a];
          break;
        }
        idx[a] = 0;
        if (a == 0) done = true;
      }
      if (done) return TupleVerdict{};
    }
  }

  // sparse engine: assemble blocked anchor boxes per interior point, walked
  // in last-axis order so the deepest recursion level sees sorted intervals
  const auto& walk_order = ctx.order[d - 1];
  std::size_t nact = 0;
  std::uint64_t blocked_bound = 0;
  bool full_cover = false;
  for (std::size_t r = 0; r < ctx.n_interior && !full_cover; ++r) {
    const auto i = static_cast<std::size_t>(walk_order[r]);
    bool active = true;
    bool covers_all = true;
    std::uint64_t width = 1;
    for (int axis = 0; axis < d; ++axis) {
      const std::int32_t c =
          ctx.cells[axis][static_cast<std::size_t>(y[axis]) * ctx.n_interior +
                          i];
      long long lo = c - m + 1;
      if (lo < 0) lo = 0;
      long long hi = c;
      if (hi > A[axis]) hi = A[axis];
      if (lo > hi) {
        active = false;
        break;
      }
      s.blo[axis][nact] = static_cast<std::int32_t>(lo);
      s.bhi[axis][nact] = static_cast<std::int32_t>(hi);
      covers_all = covers_all && lo == 0 && hi == A[axis];
      width = Ctx::mul_saturating(width, static_cast<std::uint64_t>(hi - lo + 1));
    }
    if (!active) continue;
    if (covers_all) full_cover = true;
    blocked_bound = blocked_bound > kMaxU64 - width ? kMaxU64
                                                    : blocked_bound + width;
    ++nact;
  }
  if (full_cover) return TupleVerdict{};
  if (nact == 0) {
    TupleVerdict v;
    v.success = true;
    if (want_anchor) v.anchor.assign(d, 0);
    return v;
  }
  if (!want_anchor && !counts_saturated && blocked_bound < total_anchors) {
    TupleVerdict v;
    v.success = true;  // pigeonhole: the union cannot cover every anchor
    return v;
  }

  auto& root = s.act[0];
  root.clear();
  for (std::size_t j = 0; j < nact; ++j) {
    root.push_back(static_cast<std::int32_t>(j));
  }
  TupleVerdict v;
  v.success = first_uncovered(ctx, s, A.data(), 0, root, s.anchor.data());
  if (v.success && want_anchor) {
    v.anchor.assign(s.anchor.begin(), s.anchor.begin() + d);
  }
  return v;
}

// ---------------------------------------------------------------------------
// Level enumeration: tuples with a fixed exponent sum, lexicographic.
// ---------------------------------------------------------------------------

struct LevelList {
  std::vector<int> flat;  // count * d entries
  std::size_t count = 0;
  int d = 0;
  const int* tuple(std::size_t i) const { return flat.data() + i * d; }
};

void gen_level(int d, int k, long long remaining, int axis,
               std::vector<int>& cur, std::vector<int>& flat) {
  if (axis == d - 1) {
    if (remaining <= k - 1) {
      cur[axis] = static_cast<int>(remaining);
      flat.insert(flat.end(), cur.begin(), cur.end());
    }
    return;
  }
  const long long rest_cap = static_cast<long long>(d - axis - 1) * (k - 1);
  long long from = remaining - rest_cap;
  if (from < 0) from = 0;
  const long long to = std::min<long long>(k - 1, remaining);
  for (long long v = from; v <= to; ++v) {
    cur[axis] = static_cast<int>(v);
    gen_level(d, k, remaining - v, axis + 1, cur, flat);
  }
}

LevelList tuples_at_level(int d, int k, long long s) {
  LevelList level;
  level.d = d;
  std::vector<int> cur(d, 0);
  gen_level(d, k, s, 0, cur, level.flat);
  level.count = level.flat.size() / static_cast<std::size_t>(d);
  return level;
}

// counts[s] = #{y in [0,k-1]^d : sum(y) = s}, saturating at uint64 max
std::vector<std::uint64_t> level_size_table(int d, int k) {
  std::vector<unsigned __int128> cur(1, 1);
  for (int axis = 0; axis < d; ++axis) {
    std::vector<unsigned __int128> pre(cur.size() + 1, 0);
    for (std::size_t i = 0; i < cur.size(); ++i) pre[i + 1] = pre[i] + cur[i];
    std::vector<unsigned __int128> next(cur.size() + k - 1, 0);
    for (std::size_t s = 0; s < next.size(); ++s) {
      const std::size_t hi = std::min(s, cur.size() - 1);
      const std::size_t lo =
          s >= static_cast<std::size_t>(k - 1) ? s - (k - 1) : 0;
      if (lo <= hi) next[s] = pre[hi + 1] - pre[lo];
    }
    cur = std::move(next);
  }
  std::vector<std::uint64_t> out(cur.size());
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  for (std::size_t s = 0; s < cur.size(); ++s) {
    out[s] = cur[s] > kMax ? kMax : static_cast<std::uint64_t>(cur[s]);
  }
  return out;
}

// Smallest index with fn(index) true, or -1. Deterministic under any thread
// count: workers skip work only at indices at or above an already-found
// success.
long long parallel_first_success(
    long long count, int threads,
    const std::function<bool(long long, Scratch&)>& fn, const Ctx& ctx) {
  if (count <= 0) return -1;
  if (threads <= 1 || count < 256) {
    Scratch scratch(ctx);
    for (long long i = 0; i < count; ++i) {
      if (fn(i, scratch)) return i;
    }
    return -1;
  }
  constexpr long long kBlock = 64;
  std::atomic<long long> next{0};
  std::atomic<long long> best{std::numeric_limits<long long>::max()};
  std::vector<std::thread> workers;
  const int nw = std::min<long long>(threads, (count + kBlock - 1) / kBlock);
  workers.reserve(nw);
  for (int w = 0; w < nw; ++w) {
    workers.emplace_back([&] {
      Scratch scratch(ctx);
      while (true) {
        const long long start = next.fetch_add(kBlock);
        if (start >= count || start >= best.load(std::memory_order_relaxed)) {
          break;
        }
        const long long end = std::min(count, start + kBlock);
        for (long long i = start; i < end; ++i) {
          if (i >= best.load(std::memory_order_relaxed)) break;
          if (fn(i, scratch)) {
            long long cur = best.load();
            while (i < cur && !best.compare_exchange_weak(cur, i)) {
            }
            break;
          }
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  const long long found = best.load();
  return found == std::numeric_limits<long long>::max() ? -1 : found;
}

// ---------------------------------------------------------------------------
// Bracket heuristic: a decent empty box found greedily, used only to pick the
// ascent's starting level. The final result never depends on its quality.
// ---------------------------------------------------------------------------

std::optional<OpenBox> grow_around(const Ctx& ctx,
                                   const std::vector<double>& q,
                                   std::vector<std::int32_t>& alive) {
  const int d = ctx.d;
  std::vector<double> lo(d, 0.0), hi(d, 1.0);
  alive.resize(ctx.n_interior);
  for (std::size_t i = 0; i < ctx.n_interior; ++i) {
    alive[i] = static_cast<std::int32_t>(i);
  }
  for (int cuts = 0; !alive.empty(); ++cuts) {
    if (cuts > 512) return std::nullopt;  // bail; the slabs back the bracket
    const std::size_t hit = alive.front();
    int best_axis = -1;
    bool cut_low = false;
    double best_ratio = -1.0;
    for (int a = 0; a < d; ++a) {
      const double c = ctx.coord(hit, a);
      if (c < q[a]) {
        const double ratio = (hi[a] - c) / (hi[a] - lo[a]);
        if (ratio > best_ratio) {
          best_ratio = ratio;
          best_axis = a;
          cut_low = true;
        }
      } else if (c > q[a]) {
        const double ratio = (c - lo[a]) / (hi[a] - lo[a]);
        if (ratio > best_ratio) {
          best_ratio = ratio;
          best_axis = a;
          cut_low = false;
        }
      }
    }
    if (best_axis < 0) return std::nullopt;  // q coincides with the point
    if (cut_low) {
      lo[best_axis] = ctx.coord(hit, best_axis);
    } else {
      hi[best_axis] = ctx.coord(hit, best_axis);
    }
    std::size_t kept = 0;
    for (const std::int32_t idx : alive) {
      const double c = ctx.coord(idx, best_axis);
      if (lo[best_axis] < c && c < hi[best_axis]) alive[kept++] = idx;
    }
    alive.resize(kept);
  }
  return OpenBox(lo, hi);
}

OpenBox heuristic_empty_box(const Ctx& ctx, std::uint64_t seed) {
  const int d = ctx.d;
  double best_vol = 0.0;
  std::optional<OpenBox> best;

  auto consider = [&](const OpenBox& b) {
    const double v = volume(b);
    if (v > best_vol) {
      best_vol = v;
      best = b;
    }
  };

  // widest empty slab per axis (the n+1 vertical strips of Prop. P1)
  std::vector<double> vals;
  for (int a = 0; a < d; ++a) {
    vals.clear();
    vals.push_back(0.0);
    vals.push_back(1.0);
    for (std::size_t i = 0; i < ctx.n_interior; ++i) {
      vals.push_back(ctx.coord(i, a));
    }
    std::sort(vals.begin(), vals.end());
    double glo = 0.0, ghi = 0.0;
    for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
      if (vals[i + 1] - vals[i] > ghi - glo) {
        glo = vals[i];
        ghi = vals[i + 1];
      }
    }
    if (ghi > glo) {
      std::vector<double> lo(d, 0.0), hi(d, 1.0);
      lo[a] = glo;
      hi[a] = ghi;
      consider(OpenBox(std::move(lo), std::move(hi)));
    }
  }

  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::int32_t> alive;
  std::vector<double> q(d, 0.5);
  const int trials = ctx.n_interior <= 1024 ? 15 : 7;
  if (auto b = grow_around(ctx, q, alive)) consider(*b);
  for (int trial = 0; trial < trials; ++trial) {
    for (int a = 0; a < d; ++a) q[a] = draw_unit(rng);
    if (auto b = grow_around(ctx, q, alive)) consider(*b);
  }
  if (!best) return OpenBox::unit_cube(d);
  return *best;
}

// The E1 interval mapping: largest i in [0, k+1] with a^i/a^(k+1) <= Z,
// minus one, clamped into the ladder range.
int exponent_from_extent(const ApproxParams& p, double z) {
  const double denom = pow_int(p.a, p.k + 1);
  auto value = [&](int i) { return pow_int(p.a, i) / denom; };
  int i = static_cast<int>(
      std::floor(std::log(std::max(z, 1e-300)) / std::log(p.a))) + p.k + 1;
  i = std::clamp(i, 0, p.k + 1);
  while (i > 0 && value(i) > z) --i;
  while (i < p.k + 1 && value(i + 1) <= z) ++i;
  return std::clamp(i - 1, 0, p.k - 1);
}

// ---------------------------------------------------------------------------
// Result assembly.
// ---------------------------------------------------------------------------

OpenBox placement_box(const Ctx& ctx, const int* y, const long long* anchor) {
  const int d = ctx.d;
  std::vector<double> lo(d), hi(d);
  for (int a = 0; a < d; ++a) {
    lo[a] = static_cast<double>(anchor[a]) * ctx.cell[y[a]];
    hi[a] = std::min(lo[a] + ctx.params->ladder[y[a]], 1.0);
  }
  if (ctx.params->cube_mode) {
    double side = std::numeric_limits<double>::infinity();
    for (int a = 0; a < d; ++a) side = std::min(side, hi[a] - lo[a]);
    for (int a = 0; a < d; ++a) hi[a] = lo[a] + side;
  }
  return OpenBox(std::move(lo), std::move(hi));
}

// The window-count certificate covers the closed window; a point within one
// ulp of a face can in principle slip inside the open box. Nudge it out.
void sanitize_box(OpenBox& box, const PointSet& points) {
  for (std::size_t guard = 0; guard <= points.size(); ++guard) {
    std::size_t offender = points.size();
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (contains_point_strict(box, points.point(i))) {
        offender = i;
        break;
      }
    }
    if (offender == points.size()) return;
    auto p = points.point(offender);
    int best_axis = 0;
    bool cut_low = true;
    double best_rel = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < box.dim(); ++a) {
      const double ext = box.hi[a] - box.lo[a];
      const double dlo = p[a] - box.lo[a];
      const double dhi = box.hi[a] - p[a];
      const double rel = std::min(dlo, dhi) / ext;
      if (rel < best_rel) {
        best_rel = rel;
        best_axis = static_cast<int>(a);
        cut_low = dlo <= dhi;
      }
    }
    if (cut_low) {
      box.lo[best_axis] = p[best_axis];
    } else {
      box.hi[best_axis] = p[best_axis];
    }
  }
}

struct LevelBudget {
  std::uint64_t counted = 0;
};

// Deterministic bookkeeping shared by both strategies.
struct RunningStats {
  const Ctx* ctx;
  SearchStats stats;
  std::map<long long, LevelBudget>* budgets = nullptr;

  void count_tuple(const int* y, long long level, std::uint64_t cap) {
    count_tuples_prefix(nullptr, y, 1, level, cap);
  }

  // Counts `howmany` tuples (a scan prefix) of a level; flat may be null when
  // counting a single tuple passed as y.
  void count_tuples_prefix(const LevelList* level_list, const int* y,
                           std::uint64_t howmany, long long level,
                           std::uint64_t level_size) {
    auto& budget = (*budgets)[level];
    std::uint64_t allowed = level_size > budget.counted
                                ? level_size - budget.counted
                                : 0;
    std::uint64_t take = std::min<std::uint64_t>(howmany, allowed);
    budget.counted += take;
    stats.canonical_boxes_enumerated += take;
    for (std::uint64_t i = 0; i < howmany; ++i) {
      const int* t = level_list ? level_list->tuple(i) : y;
      const std::uint64_t anchors = ctx->anchors_of(t);
      if (i < take) stats.placements_tested += anchors;
      if (anchors > stats.max_placements_single_grid) {
        stats.max_placements_single_grid = anchors;
      }
    }
  }
};

struct Winner {
  std::vector<int> tuple;
  std::vector<long long> anchor;
};

// Scans one level in lexicographic order; returns the first succeeding tuple
// with its anchor, or nullopt after testing every tuple.
std::optional<Winner> scan_level(const Ctx& ctx, long long s, int threads,
                                 PlacementEngine engine, RunningStats& rs) {
  const LevelList level = tuples_at_level(ctx.d, ctx.k, s);
  if (level.count == 0) return std::nullopt;
  const long long idx = parallel_first_success(
      static_cast<long long>(level.count), threads,
      [&](long long i, Scratch& scratch) {
        return test_tuple(ctx, scratch, level.tuple(i), false, engine).success;
      },
      ctx);
  const std::uint64_t tested =
      idx >= 0 ? static_cast<std::uint64_t>(idx) + 1 : level.count;
  rs.count_tuples_prefix(&level, nullptr, tested, s, level.count);
  if (idx < 0) return std::nullopt;
  Scratch scratch(ctx);
  const auto verdict =
      test_tuple(ctx, scratch, level.tuple(idx), true, engine);
  if (!verdict.success) {
    throw std::logic_error("level scan verdict not reproducible");
  }
  Winner w;
  w.tuple.assign(level.tuple(idx), level.tuple(idx) + ctx.d);
  w.anchor = verdict.anchor;
  return w;
}

Winner search_levels(const Ctx& ctx, const SearchOptions& options,
                     RunningStats& rs) {
  const int d = ctx.d;
  const int k = ctx.k;
  const long long s_top = static_cast<long long>(d) * (k - 1);
  const long long s_min =
      std::max<long long>(0, static_cast<long long>(d) * k - k - d);
  const std::vector<std::uint64_t> sizes = level_size_table(d, k);
  auto size_of = [&](long long s) {
    return s >= 0 && s < static_cast<long long>(sizes.size()) ? sizes[s] : 0;
  };

  if (options.strategy == SearchStrategy::level_descent) {
    for (long long s = s_top; s >= s_min; --s) {
      if (auto w = scan_level(ctx, s, options.threads, options.engine, rs)) {
        return *w;
      }
    }
    throw std::runtime_error("no empty canonical placement exists");
  }

  // --- level ascent ---
  // bracket: map a heuristic empty box through the E1 intervals
  const OpenBox eb = heuristic_empty_box(ctx, ctx.params->seed);
  std::vector<int> warm(d);
  for (int a = 0; a < d; ++a) {
    warm[a] = exponent_from_extent(*ctx.params, eb.hi[a] - eb.lo[a]);
  }
  auto sum_of = [&](const std::vector<int>& t) {
    long long s = 0;
    for (int v : t) s += v;
    return s;
  };

  Scratch scratch(ctx);
  std::optional<Winner> bracket;
  while (true) {
    const long long s = sum_of(warm);
    if (s < s_min) break;
    rs.count_tuple(warm.data(), s, size_of(s));
    const auto verdict =
        test_tuple(ctx, scratch, warm.data(), true, options.engine);
    if (verdict.success) {
      bracket = Winner{warm, verdict.anchor};
      break;
    }
    // the interval mapping of a genuine empty box always succeeds in exact
    // arithmetic; walking down is fp paranoia
    int axis = 0;
    for (int a = 1; a < d; ++a) {
      if (warm[a] > warm[axis]) axis = a;
    }
    if (warm[axis] == 0) break;
    --warm[axis];
  }
  if (!bracket) {
    // no level below s_min exists; a failure at s_min is a failure everywhere
    bracket = scan_level(ctx, s_min, options.threads, options.engine, rs);
    if (!bracket) {
      throw std::runtime_error("no empty canonical placement exists");
    }
  }

  Winner current = *bracket;
  long long s = sum_of(current.tuple);
  bool current_is_lex_least = false;
  while (s < s_top) {
    const long long s_next = s + 1;
    // warm start: bump one axis of the last winner
    std::optional<Winner> found;
    for (int a = 0; a < d && !found; ++a) {
      if (current.tuple[a] + 1 > k - 1) continue;
      std::vector<int> cand = current.tuple;
      ++cand[a];
      rs.count_tuple(cand.data(), s_next, size_of(s_next));
      const auto verdict =
          test_tuple(ctx, scratch, cand.data(), false, options.engine);
      if (verdict.success) found = Winner{std::move(cand), {}};
    }
    if (!found) {
      found = scan_level(ctx, s_next, options.threads, options.engine, rs);
      if (!found) break;  // whole level failed: s is the top succeeding level
      current = *found;
      current_is_lex_least = true;
      s = s_next;
      continue;
    }
    current = *found;
    current_is_lex_least = false;
    s = s_next;
  }

  if (!current_is_lex_least || current.anchor.empty()) {
    if (auto w = scan_level(ctx, s, options.threads, options.engine, rs)) {
      return *w;
    }
    throw std::logic_error("top succeeding level lost its placement");
  }
  return current;
}

SearchResult run_search(const PointSet& points, const ApproxParams& params,
                        const SearchOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  const Ctx ctx = build_context(points, params);

  std::map<long long, LevelBudget> budgets;
  RunningStats rs;
  rs.ctx = &ctx;
  rs.budgets = &budgets;
  rs.stats.seed = params.seed;
  rs.stats.epsilon_effective = params.epsilon_effective;
  rs.stats.k = params.k;

  Winner winner;
  if (params.cube_mode) {
    std::vector<int> tuple(ctx.d);
    Scratch scratch(ctx);
    bool ok = false;
    for (int i = params.k - 1; i >= 0 && !ok; --i) {
      std::fill(tuple.begin(), tuple.end(), i);
      rs.count_tuple(tuple.data(), i, 1);
      auto verdict = test_tuple(ctx, scratch, tuple.data(), true, options.engine);
      if (verdict.success) {
        winner = Winner{tuple, verdict.anchor};
        ok = true;
      }
    }
    if (!ok) throw std::runtime_error("no empty canonical hypercube placement");
  } else {
    winner = search_levels(ctx, options, rs);
  }

  OpenBox box = placement_box(ctx, winner.tuple.data(), winner.anchor.data());
  sanitize_box(box, points);
  const double vol = volume(box);
  rs.stats.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return SearchResult{std::move(box), vol, rs.stats};
}

}  // namespace

ApproxParams derive_params(std::size_t n, int d, double epsilon,
                           std::uint64_t seed, bool jitter) {
  return derive_common(n, d, epsilon, seed, jitter, false);
}

ApproxParams derive_cube_params(std::size_t n, int d, double epsilon,
                                std::uint64_t seed, bool jitter) {
  return derive_common(n, d, epsilon, seed, jitter, true);
}

std::vector<std::vector<int>> enumerate_large_exponents(
    const ApproxParams& params) {
  const int d = params.dim;
  const int k = params.k;
  const long long s_min =
      std::max<long long>(0, static_cast<long long>(d) * k - k - d);
  const long long s_top = static_cast<long long>(d) * (k - 1);

  std::vector<std::vector<int>> out;
  std::vector<int> cur(d, 0);
  // plain odometer in lexicographic order with the sum filter
  std::function<void(int, long long)> rec = [&](int axis, long long sum) {
    if (axis == d) {
      if (sum >= s_min) out.push_back(cur);
      return;
    }
    for (int v = 0; v <= k - 1; ++v) {
      cur[axis] = v;
      // feasibility: even maxing the remaining axes must reach s_min
      const long long rest = static_cast<long long>(d - axis - 1) * (k - 1);
      if (sum + v + rest < s_min) continue;
      rec(axis + 1, sum + v);
    }
  };
  rec(0, 0);
  (void)s_top;
  return out;
}

std::optional<OpenBox> search_canonical_box(const PointSet& points,
                                            std::span<const int> exponents,
                                            const ApproxParams& params,
                                            PlacementEngine engine) {
  if (exponents.size() != static_cast<std::size_t>(params.dim)) {
    throw std::invalid_argument("exponent tuple arity mismatch");
  }
  for (int y : exponents) {
    if (y < 0 || y >= params.k) {
      throw std::invalid_argument("exponent outside the ladder range");
    }
  }
  const Ctx ctx = build_context(points, params);
  Scratch scratch(ctx);
  const auto verdict =
      test_tuple(ctx, scratch, exponents.data(), true, engine);
  if (!verdict.success) return std::nullopt;
  return placement_box(ctx, exponents.data(), verdict.anchor.data());
}

SearchResult approx_max_empty_box(const PointSet& points, double epsilon,
                                  std::uint64_t seed, bool jitter,
                                  const SearchOptions& options) {
  const int d = points.dim() == 0 ? 2 : static_cast<int>(points.dim());
  const ApproxParams params =
      derive_params(points.size(), d, epsilon, seed, jitter);
  return run_search(points, params, options);
}

SearchResult approx_max_empty_cube(const PointSet& points, double epsilon,
                                   std::uint64_t seed, bool jitter,
                                   const SearchOptions& options) {
  const int d = points.dim() == 0 ? 2 : static_cast<int>(points.dim());
  const ApproxParams params =
      derive_cube_params(points.size(), d, epsilon, seed, jitter);
  return run_search(points, params, options);
}

}  // namespace emptybox
