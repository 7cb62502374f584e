// Copyright 2026 The emptybox Authors
// SPDX-License-Identifier: Apache-2.0

#include "emptybox/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "emptybox/approx.hpp"
#include "emptybox/bounds.hpp"
#include "emptybox/cli.hpp"
#include "emptybox/gridcount.hpp"
#include "emptybox/io.hpp"
#include "emptybox/oracle.hpp"
#include "emptybox/pointgen.hpp"

namespace emptybox {

namespace {

constexpr double kTol = 1e-12;

struct Instance {
  int d;
  std::size_t n;
  PointSet points;
  double v_exact_box = 0.0;
  double v_exact_cube = 0.0;
};

struct Harness {
  SearchOptions search;
  std::vector<Instance> instances;                        // criteria 1/2 grid
  std::vector<std::pair<std::size_t, double>> oracle_log;  // (n, V_exact)
  bool stats_within_binomial = true;
  std::string stats_detail;
};

const int kDims[] = {2, 3};
const std::size_t kSizes[] = {4, 8, 12};
const double kEpsilons[] = {0.1, 0.25, 0.5};

void build_instances(Harness& h) {
  for (int d : kDims) {
    for (std::size_t n : kSizes) {
      for (std::size_t inst = 0; inst < 50; ++inst) {
        const std::uint64_t seed =
            1000000ull + static_cast<std::uint64_t>(d) * 10000 + n * 100 + inst;
        Instance instance{d, n, uniform_random(n, d, seed)};
        instance.v_exact_box = exact_max_empty_box(instance.points).volume;
        instance.v_exact_cube = exact_max_empty_cube(instance.points).volume;
        h.oracle_log.emplace_back(n, instance.v_exact_box);
        h.instances.push_back(std::move(instance));
      }
    }
  }
}

CriterionResult criterion_1(Harness& h) {
  CriterionResult r{1, "approximation guarantee (box)", true, true, "", 0};
  std::size_t runs = 0;
  double worst_margin = 1e300;
  for (std::size_t idx = 0; idx < h.instances.size(); ++idx) {
    const Instance& inst = h.instances[idx];
    for (double eps : kEpsilons) {
      const std::uint64_t seed = (idx % 50) % 5;
      const SearchResult res =
          approx_max_empty_box(inst.points, eps, seed, true, h.search);
      ++runs;
      const double lower = (1.0 - eps) * inst.v_exact_box - kTol;
      const double upper = inst.v_exact_box + kTol;
      worst_margin = std::min(worst_margin, res.volume - lower);
      if (!(res.volume >= lower && res.volume <= upper)) {
        r.pass = false;
        std::ostringstream os;
        os << "violation at d=" << inst.d << " n=" << inst.n << " eps=" << eps
           << " seed=" << seed << ": approx=" << res.volume
           << " exact=" << inst.v_exact_box;
        r.detail = os.str();
        return r;
      }
      const auto bound = binomial_u128(
          static_cast<unsigned>(res.stats.k + inst.d),
          static_cast<unsigned>(inst.d));
      if (static_cast<unsigned __int128>(res.stats.canonical_boxes_enumerated) >
          bound) {
        h.stats_within_binomial = false;
        h.stats_detail = "canonical count exceeded C(k+d,d) at d=" +
                         std::to_string(inst.d) + " n=" + std::to_string(inst.n);
      }
    }
  }
  std::ostringstream os;
  os << runs << " runs, worst slack above (1-eps)*V_exact-1e-12: "
     << worst_margin;
  r.detail = os.str();
  return r;
}

CriterionResult criterion_2(Harness& h) {
  CriterionResult r{2, "approximation guarantee (hypercube)", true, true, "", 0};
  std::size_t runs = 0;
  for (std::size_t idx = 0; idx < h.instances.size(); ++idx) {
    const Instance& inst = h.instances[idx];
    for (double eps : kEpsilons) {
      const std::uint64_t seed = (idx % 50) % 5;
      const SearchResult res =
          approx_max_empty_cube(inst.points, eps, seed, true, h.search);
      ++runs;
      const double lower = (1.0 - eps) * inst.v_exact_cube - kTol;
      const double upper = inst.v_exact_cube + kTol;
      if (!(res.volume >= lower && res.volume <= upper)) {
        r.pass = false;
        std::ostringstream os;
        os << "violation at d=" << inst.d << " n=" << inst.n << " eps=" << eps
           << ": approx=" << res.volume << " exact=" << inst.v_exact_cube;
        r.detail = os.str();
        return r;
      }
    }
  }
  r.detail = std::to_string(runs) + " runs within tolerance";
  return r;
}

CriterionResult criterion_3(Harness& h) {
  CriterionResult r{3, "van der Corput bound: area < 4/n", true, true, "", 0};
  std::ostringstream os;
  for (std::size_t n : {8u, 16u, 32u, 64u, 128u}) {
    const PointSet pts = van_der_corput(n);
    const OracleResult res = exact_max_empty_rect_2d(pts);
    h.oracle_log.emplace_back(n, res.volume);
    os << "n=" << n << ": " << res.volume << " vs " << 4.0 / n << "; ";
    if (!(res.volume < 4.0 / static_cast<double>(n))) {
      r.pass = false;
      r.detail = "bound violated at n=" + std::to_string(n);
      return r;
    }
  }
  r.detail = os.str();
  return r;
}

CriterionResult criterion_4(Harness& h) {
  CriterionResult r{4, "Halton-Hammersley bound: volume < 24/n (d=3)", true,
                    true, "", 0};
  std::ostringstream os;
  for (std::size_t n : {8u, 10u, 12u}) {
    const PointSet pts = halton_hammersley(n, 3);
    const OracleResult res = exact_max_empty_box(pts);
    h.oracle_log.emplace_back(n, res.volume);
    os << "exact n=" << n << ": " << res.volume << "; ";
    if (!(res.volume < 24.0 / static_cast<double>(n))) {
      r.pass = false;
      r.detail = "exact bound violated at n=" + std::to_string(n);
      return r;
    }
  }
  const double eps = 0.1;
  for (std::size_t n : {64u, 216u}) {
    const PointSet pts = halton_hammersley(n, 3);
    const SearchResult res = approx_max_empty_box(pts, eps, 0, true, h.search);
    const double estimate = res.volume / (1.0 - eps);
    os << "approx n=" << n << ": V/(1-eps)=" << estimate << "; ";
    if (!(estimate < 24.0 / static_cast<double>(n))) {
      r.pass = false;
      r.detail = "approx bound violated at n=" + std::to_string(n);
      return r;
    }
  }
  r.detail = os.str();
  return r;
}

CriterionResult criterion_5(Harness&) {
  CriterionResult r{5, "tight configurations (A(2), A(4))", true, true, "", 0};
  const double xi = (3.0 - std::sqrt(5.0)) / 2.0;
  const OracleResult two =
      exact_max_empty_box(known_tight_configs(TightConfig::two_point_xi));
  const OracleResult four =
      exact_max_empty_box(known_tight_configs(TightConfig::four_point_quarter));
  std::ostringstream os;
  os << "A(2) candidate " << two.volume << " vs " << xi << ", A(4) candidate "
     << four.volume << " vs 0.25";
  r.detail = os.str();
  r.pass = std::abs(two.volume - xi) <= kTol &&
           std::abs(four.volume - 0.25) <= kTol;
  return r;
}

CriterionResult criterion_6(Harness& h) {
  CriterionResult r{6, "trivial lower bound: V_exact >= 1/(n+1)", true, true,
                    "", 0};
  std::size_t checked = 0;
  for (const auto& [n, v] : h.oracle_log) {
    ++checked;
    if (!(v >= 1.0 / (static_cast<double>(n) + 1.0))) {
      r.pass = false;
      r.detail = "violated at n=" + std::to_string(n) + " with V=" +
                 std::to_string(v);
      return r;
    }
  }
  r.detail = std::to_string(checked) +
             " oracle values checked (criterion 4's n=64,216 are approx-only"
             " and carry no exact value)";
  return r;
}

CriterionResult criterion_7(Harness&) {
  CriterionResult r{7, "hypercube bounds (grid construction + A'_d)", true,
                    true, "", 0};
  std::ostringstream os;
  for (std::size_t k : {1u, 2u, 3u}) {
    const OracleResult res = exact_max_empty_cube(grid_vertices(k, 2));
    const double expected =
        1.0 / (static_cast<double>(k + 1) * static_cast<double>(k + 1));
    os << "k=" << k << ": " << res.volume << " vs " << expected << "; ";
    if (std::abs(res.volume - expected) > kTol) {
      r.pass = false;
      r.detail = "grid_vertices(" + std::to_string(k) + ",2) mismatch";
      return r;
    }
  }
  const BoundReport b = bounds_Aprime(9, 2);
  os << "A'(9) bounds (" << b.lower << ", " << b.upper << ")";
  r.detail = os.str();
  r.pass = b.lower == 0.0625 && b.upper == 0.0625;
  return r;
}

CriterionResult criterion_8(Harness&) {
  CriterionResult r{8, "restricted-count sandwich + maximality", true, true,
                    "", 0};
  std::ostringstream os;
  const std::vector<std::vector<std::size_t>> configs = {
      {2, 2}, {3, 3}, {2, 2, 2}};
  for (const auto& counts : configs) {
    const std::size_t d = counts.size();
    std::size_t n = 0;
    for (auto c : counts) n += c;
    const PointSet raw = restricted_lb_construction(d, counts);
    const PointSet pts = embed_in_unit_cube(raw, default_embed_margin(n));
    const auto boxes = enumerate_restricted_boxes(pts, OpenBox::unit_cube(d));
    const BoundReport b = restricted_count_bounds(n, static_cast<int>(d));
    os << "d=" << d << " n=" << n << ": count=" << boxes.size() << " in ["
       << b.lower << ", " << b.upper << "]; ";
    if (!(static_cast<double>(boxes.size()) >= b.lower &&
          static_cast<double>(boxes.size()) <= b.upper)) {
      r.pass = false;
      r.detail = "sandwich violated for d=" + std::to_string(d);
      return r;
    }
  }
  // the worked planar example, in raw coordinates
  const PointSet fig = restricted_lb_construction(2, {3, 4});
  const OpenBox region({-5.0, -5.0}, {5.0, 5.0});
  const OpenBox example({-3.0, -3.0}, {2.0, 3.0});
  const bool maximal = is_maximal_empty(example, fig, region);
  os << "(-3,2)x(-3,3) maximal: " << (maximal ? "yes" : "no");
  r.detail = os.str();
  r.pass = maximal;
  return r;
}

CriterionResult criterion_9(Harness&) {
  CriterionResult r{9, "window counts equal naive counting", true, true, "", 0};
  std::mt19937_64 rng(424242);
  auto pick = [&](std::size_t lo, std::size_t hi) {
    return lo + rng() % (hi - lo + 1);
  };
  std::size_t checked_windows = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + trial % 3;
    const std::size_t n = pick(0, 50);
    const PointSet pts = uniform_random(n, d, rng());
    std::vector<double> lengths(d);
    for (int a = 0; a < d; ++a) {
      lengths[a] = 0.15 + 0.45 * ((rng() >> 11) * 0x1.0p-53);
    }
    const GridSpec grid(lengths);
    const CountTensor cells = cell_counts(pts, grid);
    const CountTensor corner = corner_counts(cells);
    std::vector<std::size_t> sizes(d);
    for (int a = 0; a < d; ++a) sizes[a] = pick(1, grid.extents[a]);
    const CountTensor windows = all_box_counts(corner, sizes);

    // naive: bucket each point, then count per window directly
    std::vector<std::vector<std::size_t>> cell_of(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      cell_of[i].resize(d);
      for (int a = 0; a < d; ++a) {
        cell_of[i][a] = grid.cell_index(pts.coord(i, a), a);
      }
    }
    std::vector<std::size_t> anchor(d, 0);
    for (std::size_t flat = 0; flat < windows.values.size(); ++flat) {
      std::int64_t naive = 0;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        bool in = true;
        for (int a = 0; a < d; ++a) {
          if (cell_of[i][a] < anchor[a] || cell_of[i][a] >= anchor[a] + sizes[a]) {
            in = false;
            break;
          }
        }
        if (in) ++naive;
      }
      if (naive != windows.values[flat]) {
        r.pass = false;
        r.detail = "mismatch in trial " + std::to_string(trial);
        return r;
      }
      ++checked_windows;
      for (int a = d; a-- > 0;) {
        if (++anchor[a] < windows.shape[a]) break;
        anchor[a] = 0;
      }
    }
  }
  r.detail = "200 instances, " + std::to_string(checked_windows) +
             " windows compared exactly";
  return r;
}

CriterionResult criterion_10(Harness& h) {
  CriterionResult r{10, "run statistics respect the counting bounds", true,
                    true, "", 0};
  if (!h.stats_within_binomial) {
    r.pass = false;
    r.detail = h.stats_detail;
    return r;
  }
  const std::size_t n = 100;
  const int d = 3;
  const double eps = 0.5;
  const PointSet pts = uniform_random(n, d, 777);
  const SearchResult res = approx_max_empty_box(pts, eps, 0, true, h.search);
  const double log2n = std::log2(static_cast<double>(n));
  const double canonical_closed = std::pow(2.0 * std::exp(1.0) / eps * log2n, d);
  const double placement_closed = 12.0 * std::pow(2.0 * d / eps, d) *
                                  static_cast<double>(n);
  const auto binom = binomial_u128(static_cast<unsigned>(res.stats.k + d),
                                   static_cast<unsigned>(d));
  std::ostringstream os;
  os << "criterion-1 runs within C(k+d,d); n=100 run: canonical="
     << res.stats.canonical_boxes_enumerated << " <= {C(k+d,d)="
     << u128_to_string(binom) << ", closed=" << canonical_closed
     << "}, max per-grid placements=" << res.stats.max_placements_single_grid
     << " <= " << placement_closed;
  r.detail = os.str();
  r.pass =
      static_cast<unsigned __int128>(res.stats.canonical_boxes_enumerated) <=
          binom &&
      static_cast<double>(res.stats.canonical_boxes_enumerated) <=
          canonical_closed &&
      static_cast<double>(res.stats.max_placements_single_grid) <=
          placement_closed;
  return r;
}

CriterionResult criterion_11(Harness&) {
  CriterionResult r{11, "determinism across thread counts", true, true, "", 0};
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "emptybox_verify_pts.csv";
  {
    std::ofstream out(path);
    out << pointset_to_csv(uniform_random(40, 2, 123));
  }
  auto run = [&](const std::string& threads) {
    return dispatch({"approx-box", "--input", path.string(), "--epsilon",
                     "0.25", "--seed", "7", "--threads", threads});
  };
  const CliResult a = run("1");
  const CliResult b = run("3");
  std::error_code ec;
  fs::remove(path, ec);
  if (a.exit_code != 0 || b.exit_code != 0) {
    r.pass = false;
    r.detail = "runs failed: " + a.error + b.error;
    return r;
  }
  auto canonical = [](const std::string& text) {
    auto j = nlohmann::ordered_json::parse(text);
    j["stats"]["elapsed_seconds"] = 0.0;
    j["duration_seconds"] = 0.0;
    return j.dump();
  };
  const std::string ca = canonical(a.output);
  const std::string cb = canonical(b.output);
  r.pass = ca == cb;
  r.detail = r.pass ? "reports byte-identical excluding wall-clock fields"
                    : "reports differ";
  return r;
}

CriterionResult scaling_note(Harness& h) {
  CriterionResult r{12, "near-linear scaling in n (soft note)", true, false, "",
                    0};
  SearchOptions opts = h.search;
  opts.threads = 1;
  double prev = 0.0;
  double worst_ratio = 0.0;
  std::ostringstream os;
  for (std::size_t n : {1000u, 2000u, 4000u}) {
    const PointSet pts = uniform_random(n, 2, 9001);
    const auto t0 = std::chrono::steady_clock::now();
    const SearchResult res = approx_max_empty_box(pts, 0.25, 1, true, opts);
    const double t =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    os << "n=" << n << ": " << t << "s (V=" << res.volume << "); ";
    if (prev > 0.0) worst_ratio = std::max(worst_ratio, t / prev);
    prev = t;
  }
  os << "worst doubling ratio " << worst_ratio << " (target < 4)";
  r.detail = os.str();
  r.pass = worst_ratio < 4.0;
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const VerifyOptions& options) {
  Harness h;
  h.search.threads = options.threads > 0
                         ? options.threads
                         : static_cast<int>(std::max(
                               1u, std::thread::hardware_concurrency()));
  h.search.engine = PlacementEngine::automatic;
  h.search.strategy = SearchStrategy::level_ascent;

  std::vector<CriterionResult> results;
  auto timed = [&](auto&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r = fn(h);
    r.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    results.push_back(std::move(r));
  };

  build_instances(h);
  timed(criterion_1);
  timed(criterion_2);
  timed(criterion_3);
  timed(criterion_4);
  timed(criterion_5);
  timed(criterion_6);
  timed(criterion_7);
  timed(criterion_8);
  timed(criterion_9);
  timed(criterion_10);
  timed(criterion_11);
  if (options.scaling_note) timed(scaling_note);
  return results;
}

int print_acceptance(std::ostream& out, const VerifyOptions& options) {
  const auto results = run_acceptance(options);
  int failures = 0;
  for (const auto& r : results) {
    if (!r.pass && r.hard) ++failures;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%6.2fs", r.seconds);
    out << (r.pass ? "PASS" : (r.hard ? "FAIL" : "WARN")) << "  criterion "
        << r.id << (r.hard ? "" : " (soft)") << ": " << r.name << "  [" << buf
        << "]\n";
    if (!r.detail.empty()) out << "      " << r.detail << "\n";
  }
  out << (failures == 0 ? "ACCEPTANCE: all hard criteria passed\n"
                        : "ACCEPTANCE: " + std::to_string(failures) +
                              " hard criterion(s) FAILED\n");
  return failures;
}

}  // namespace emptybox
