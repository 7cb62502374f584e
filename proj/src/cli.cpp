// Copyright 2026 The emptybox Authors
// SPDX-License-Identifier: Apache-2.0

#include "emptybox/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "emptybox/approx.hpp"
#include "emptybox/bounds.hpp"
#include "emptybox/geometry.hpp"
#include "emptybox/io.hpp"
#include "emptybox/oracle.hpp"
#include "emptybox/pointgen.hpp"
#include "emptybox/verify.hpp"

namespace emptybox {

namespace {

using ordered_json = nlohmann::ordered_json;

std::uint64_t env_default_seed() {
  const char* value = std::getenv("EMPTYBOX_SEED");
  if (!value) return 0;
  try {
    return std::stoull(value);
  } catch (...) {
    return 0;
  }
}

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

ordered_json stats_to_json(const SearchStats& s) {
  ordered_json j;
  j["canonical_boxes_enumerated"] = s.canonical_boxes_enumerated;
  j["placements_tested"] = s.placements_tested;
  j["max_placements_single_grid"] = s.max_placements_single_grid;
  j["k"] = s.k;
  j["epsilon_effective"] = s.epsilon_effective;
  j["seed"] = s.seed;
  j["elapsed_seconds"] = s.elapsed_seconds;
  return j;
}

struct InputOptions {
  std::string path;
  std::string format;
  bool dedupe = false;
};

struct LoadedInstance {
  PointSet raw;
  OpenBox region;
  Normalized normalized;
};

LoadedInstance load_instance(const InputOptions& in) {
  IngestResult ing = ingest(in.path, in.format);
  if (in.dedupe) {
    PointSet unique(ing.points.dim(), {});
    std::vector<std::vector<double>> seen;
    for (std::size_t i = 0; i < ing.points.size(); ++i) {
      std::vector<double> row(ing.points.point(i).begin(),
                              ing.points.point(i).end());
      if (std::find(seen.begin(), seen.end(), row) == seen.end()) {
        seen.push_back(row);
        unique.push_back(row);
      }
    }
    ing.points = std::move(unique);
  }
  Normalized norm = normalize_to_unit(ing.points, ing.region);
  return LoadedInstance{std::move(ing.points), std::move(ing.region),
                        std::move(norm)};
}

ordered_json report_header(const std::string& command, std::size_t dim,
                           std::size_t n) {
  ordered_json j;
  j["schema"] = 1;
  j["command"] = command;
  j["dim"] = dim;
  j["n"] = n;
  return j;
}

void attach_result_boxes(ordered_json& report, const LoadedInstance& inst,
                         const OpenBox& box_unit, double volume_unit) {
  const OpenBox box_input = inst.normalized.transform.invert_box(box_unit);
  ordered_json result;
  result["box_unit"] = box_to_json(box_unit);
  result["box_input"] = box_to_json(box_input);
  result["volume_unit"] = volume_unit;
  result["volume_input"] = volume(box_input);
  report["result"] = std::move(result);
}

std::string render(const ordered_json& report, const std::string& output) {
  if (output == "text") {
    std::ostringstream out;
    out.precision(17);
    out << report["command"].get<std::string>() << ": ";
    if (report.contains("result")) {
      const auto& r = report["result"];
      if (r.contains("volume_input")) {
        out << "volume " << r["volume_input"].get<double>()
            << " (input units), " << r["volume_unit"].get<double>()
            << " (unit cube)\n";
        out << "  box (input units): "
            << r["box_input"].dump() << "\n";
      } else {
        out << r.dump() << "\n";
      }
    } else {
      out << report.dump(2) << "\n";
    }
    return out.str();
  }
  return report.dump(2) + "\n";
}

}  // namespace

CliResult dispatch(const std::vector<std::string>& args) {
  CLI::App app{"maximum empty box toolkit"};
  app.name("emptybox");
  app.require_subcommand(1);

  InputOptions in;
  std::string output = "json";
  double epsilon = 0.25;
  std::uint64_t seed = env_default_seed();
  bool no_jitter = false;
  int threads = 1;
  bool force = false;

  // gen
  auto* gen = app.add_subcommand("gen", "generate a point set");
  std::string generator = "uniform";
  std::size_t gen_n = 16;
  std::size_t gen_dim = 2;
  std::string counts_arg;
  gen->add_option("--generator", generator,
                  "vdc|halton|restricted-lb|grid|uniform|tight2|tight4")
      ->check(CLI::IsMember({"vdc", "halton", "restricted-lb", "grid",
                             "uniform", "tight2", "tight4"}));
  gen->add_option("--n", gen_n, "number of points (interior k for grid)");
  gen->add_option("--dim", gen_dim, "dimension (halton/grid/uniform)");
  gen->add_option("--counts", counts_arg,
                  "per-axis counts for restricted-lb, e.g. 3,4");
  gen->add_option("--seed", seed, "random seed (uniform)");
  gen->add_option("--output", output, "json|text (text = CSV rows)");

  auto add_common = [&](CLI::App* cmd, bool wants_epsilon) {
    cmd->add_option("--input", in.path, "input file")->required();
    cmd->add_option("--format", in.format, "csv|json (default: by extension)");
    cmd->add_flag("--dedupe", in.dedupe, "drop duplicate points");
    cmd->add_option("--output", output, "json|text");
    cmd->add_option("--threads", threads, "worker cap inside the search");
    if (wants_epsilon) {
      cmd->add_option("--epsilon", epsilon, "approximation parameter in (0,1)")
          ->required();
      cmd->add_option("--seed", seed, "seed for the epsilon jitter");
      cmd->add_flag("--no-jitter", no_jitter, "disable the epsilon jitter");
    } else {
      cmd->add_flag("--force", force, "override the oracle scale guard");
    }
  };

  auto* approx_box = app.add_subcommand(
      "approx-box", "(1-eps)-approximate maximum empty box");
  add_common(approx_box, true);
  auto* approx_cube = app.add_subcommand(
      "approx-cube", "(1-eps)-approximate maximum empty hypercube");
  add_common(approx_cube, true);
  auto* exact_box =
      app.add_subcommand("exact-box", "exhaustive maximum empty box");
  add_common(exact_box, false);
  auto* exact_cube =
      app.add_subcommand("exact-cube", "exhaustive maximum empty hypercube");
  add_common(exact_cube, false);
  auto* restricted = app.add_subcommand(
      "restricted-count", "enumerate maximal empty boxes in the input region");
  add_common(restricted, false);

  // bounds
  auto* bounds_cmd =
      app.add_subcommand("bounds", "closed-form bound calculators");
  std::string quantity = "ad";
  std::size_t bounds_n = 1;
  int bounds_dim = 2;
  double bounds_eps = 0.5;
  bounds_cmd->add_option("--quantity", quantity, "ad|aprime|restricted|algorithm")
      ->check(CLI::IsMember({"ad", "aprime", "restricted", "algorithm"}));
  bounds_cmd->add_option("--n", bounds_n, "number of points")->required();
  bounds_cmd->add_option("--dim", bounds_dim, "dimension")->required();
  bounds_cmd->add_option("--epsilon", bounds_eps, "epsilon (algorithm bounds)");
  bounds_cmd->add_option("--output", output, "json|text");

  // verify
  auto* verify_cmd =
      app.add_subcommand("verify", "run the acceptance suite at desk scale");
  int verify_threads = 0;
  verify_cmd->add_option("--threads", verify_threads,
                         "worker cap (0 = hardware)");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("emptybox");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return CliResult{0, app.help(), ""};
    }
    return CliResult{1, "", std::string(e.what()) + "\n" + app.help()};
  }

  const SearchOptions options{threads, PlacementEngine::automatic,
                              SearchStrategy::level_ascent};
  Timer timer;
  try {
    if (gen->parsed()) {
      PointSet points;
      std::optional<OpenBox> region;
      if (generator == "vdc") {
        points = van_der_corput(gen_n);
        region = OpenBox::unit_cube(2);
      } else if (generator == "halton") {
        points = halton_hammersley(gen_n, gen_dim);
        region = OpenBox::unit_cube(gen_dim);
      } else if (generator == "grid") {
        points = grid_vertices(gen_n, gen_dim);
        region = OpenBox::unit_cube(gen_dim);
      } else if (generator == "uniform") {
        points = uniform_random(gen_n, gen_dim, seed);
        region = OpenBox::unit_cube(gen_dim);
      } else if (generator == "tight2") {
        points = known_tight_configs(TightConfig::two_point_xi);
        region = OpenBox::unit_cube(2);
      } else if (generator == "tight4") {
        points = known_tight_configs(TightConfig::four_point_quarter);
        region = OpenBox::unit_cube(2);
      } else if (generator == "restricted-lb") {
        if (counts_arg.empty()) {
          return CliResult{1, "", "restricted-lb needs --counts, e.g. 3,4"};
        }
        std::vector<std::size_t> counts;
        std::stringstream ss(counts_arg);
        std::string item;
        while (std::getline(ss, item, ',')) {
          counts.push_back(std::stoull(item));
        }
        points = restricted_lb_construction(counts.size(), counts);
      }
      if (output == "text") {
        return CliResult{0, pointset_to_csv(points), ""};
      }
      return CliResult{0, pointset_to_json(points, region).dump(2) + "\n", ""};
    }

    if (bounds_cmd->parsed()) {
      ordered_json j;
      j["schema"] = 1;
      j["command"] = "bounds";
      if (quantity == "algorithm") {
        const AlgorithmBounds b =
            algorithm_count_bounds(bounds_n, bounds_dim, bounds_eps);
        j["quantity"] = "canonical_count+placement_count";
        j["n"] = bounds_n;
        j["dim"] = bounds_dim;
        j["epsilon"] = bounds_eps;
        j["k"] = b.k;
        j["canonical_upper_exact"] = b.canonical_exact;
        j["canonical_upper_exact_str"] = b.canonical_exact_str;
        j["closed_form_regime"] = b.closed_form_regime;
        if (b.closed_form_regime) {
          j["canonical_upper_closed"] = b.canonical_closed;
          j["placement_upper_closed"] = b.placement_closed;
        }
      } else {
        BoundReport r;
        if (quantity == "ad") {
          r = bounds_Ad(bounds_n, bounds_dim);
        } else if (quantity == "aprime") {
          r = bounds_Aprime(bounds_n, bounds_dim);
        } else {
          r = restricted_count_bounds(bounds_n, bounds_dim);
        }
        j["quantity"] = r.quantity;
        j["n"] = r.n;
        j["dim"] = r.dim;
        j["lower"] = r.lower;
        j["upper"] = r.upper;
        if (!r.lower_exact.empty()) {
          j["lower_exact"] = r.lower_exact;
          j["upper_exact"] = r.upper_exact;
        }
        j["degenerate"] = r.degenerate;
        j["formulas"] = r.formulas;
      }
      j["duration_seconds"] = timer.seconds();
      return CliResult{0, render(j, output), ""};
    }

    if (verify_cmd->parsed()) {
      VerifyOptions vo;
      vo.threads = verify_threads;
      std::ostringstream out;
      const int failures = print_acceptance(out, vo);
      return CliResult{failures == 0 ? 0 : 1, out.str(), ""};
    }

    // the remaining subcommands all read an instance
    LoadedInstance inst = load_instance(in);
    const std::size_t dim = inst.region.dim();
    const std::size_t n = inst.raw.size();

    if (approx_box->parsed() || approx_cube->parsed()) {
      const bool cube = approx_cube->parsed();
      const SearchResult res =
          cube ? approx_max_empty_cube(inst.normalized.points, epsilon, seed,
                                       !no_jitter, options)
               : approx_max_empty_box(inst.normalized.points, epsilon, seed,
                                      !no_jitter, options);
      ordered_json j = report_header(cube ? "approx-cube" : "approx-box", dim, n);
      ordered_json params;
      params["epsilon"] = epsilon;
      params["epsilon_effective"] = res.stats.epsilon_effective;
      params["seed"] = seed;
      params["jitter"] = !no_jitter;
      j["parameters"] = std::move(params);
      j["region"] = box_to_json(inst.region);
      j["points_dropped_on_boundary"] = inst.normalized.dropped;
      attach_result_boxes(j, inst, res.box, res.volume);
      j["stats"] = stats_to_json(res.stats);
      const AlgorithmBounds ab = algorithm_count_bounds(
          n, static_cast<int>(dim), res.stats.epsilon_effective);
      ordered_json bj;
      bj["canonical_upper_exact"] = ab.canonical_exact;
      bj["canonical_within"] =
          static_cast<double>(res.stats.canonical_boxes_enumerated) <=
          ab.canonical_exact;
      if (ab.closed_form_regime) {
        bj["canonical_upper_closed"] = ab.canonical_closed;
        bj["placement_upper_closed"] = ab.placement_closed;
        bj["placement_within"] =
            static_cast<double>(res.stats.max_placements_single_grid) <=
            ab.placement_closed;
      }
      j["bounds"] = std::move(bj);
      j["duration_seconds"] = timer.seconds();
      return CliResult{0, render(j, output), ""};
    }

    if (exact_box->parsed() || exact_cube->parsed()) {
      const bool cube = exact_cube->parsed();
      if (force) {
        std::cerr << "scale-guard override: "
                  << oracle_cost_estimate(inst.normalized.points.size(), dim)
                  << "\n";
      }
      const OracleResult res = cube
                                   ? exact_max_empty_cube(inst.normalized.points, force)
                                   : exact_max_empty_box(inst.normalized.points, force);
      ordered_json j = report_header(cube ? "exact-cube" : "exact-box", dim, n);
      j["region"] = box_to_json(inst.region);
      j["points_dropped_on_boundary"] = inst.normalized.dropped;
      attach_result_boxes(j, inst, res.box, res.volume);
      ordered_json bj;
      bj["trivial_lower"] = 1.0 / (static_cast<double>(n) + 1.0);
      bj["trivial_lower_holds"] =
          res.volume >= 1.0 / (static_cast<double>(n) + 1.0) - 1e-12;
      j["bounds"] = std::move(bj);
      j["duration_seconds"] = timer.seconds();
      return CliResult{0, render(j, output), ""};
    }

    if (restricted->parsed()) {
      // maximal empty boxes live in the input region; no normalization
      const auto boxes =
          enumerate_restricted_boxes(inst.raw, inst.region, force);
      ordered_json j = report_header("restricted-count", dim, n);
      j["region"] = box_to_json(inst.region);
      j["result"] = ordered_json{{"count", boxes.size()}};
      if (n >= 2 && dim >= 2) {
        const BoundReport r =
            restricted_count_bounds(n, static_cast<int>(dim));
        ordered_json bj;
        bj["lower"] = r.lower;
        bj["upper"] = r.upper;
        bj["lower_exact"] = r.lower_exact;
        bj["upper_exact"] = r.upper_exact;
        bj["within"] = static_cast<double>(boxes.size()) >= r.lower &&
                       static_cast<double>(boxes.size()) <= r.upper;
        bj["degenerate"] = r.degenerate;
        j["bounds"] = std::move(bj);
      }
      j["duration_seconds"] = timer.seconds();
      return CliResult{0, render(j, output), ""};
    }
  } catch (const ScaleGuardError& e) {
    return CliResult{3, "", std::string("scale guard: ") + e.what()};
  } catch (const ParseError& e) {
    return CliResult{2, "", std::string("data error: ") + e.what()};
  } catch (const std::invalid_argument& e) {
    return CliResult{2, "", std::string("data error: ") + e.what()};
  } catch (const std::exception& e) {
    return CliResult{2, "", std::string("error: ") + e.what()};
  }
  return CliResult{1, "", "no subcommand executed\n" + app.help()};
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  args.reserve(argc > 0 ? argc - 1 : 0);
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  const CliResult res = dispatch(args);
  if (!res.output.empty()) std::cout << res.output;
  if (!res.error.empty()) std::cerr << res.error << "\n";
  return res.exit_code;
}

}  // namespace emptybox
