#pragma once

// Subcommands of the `nei` tool as plain functions. The executable only
// parses flags and maps exceptions to exit codes.

#include <array>
#include <cstdint>
#include <filesystem>
#include <future>
#include <optional>
#include <string>
#include <vector>

#include "nei/cube.hpp"
#include "nei/hierarchy.hpp"
#include "nei/io.hpp"
#include "nei/report.hpp"
#include "nei/swarm.hpp"

namespace nei::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kParse = 2,
  kDomain = 3,
  kConfig = 4,
  kIo = 5,
};

class usage_error : public error {
 public:
  using error::error;
};

struct NeiOptions {
  std::string input;
  Rounding rounding = Rounding::Exact;
  std::string base = "e";
};

inline RunReport cmd_nei(const NeiOptions& opt) {
  RunReport r;
  r.command = "nei";
  r.rounding = opt.rounding;
  r.base = opt.base;
  r.entropy = evaluate(io::load_event_table(opt.input), opt.rounding, log_base_from_name(opt.base));
  return r;
}

struct CubeOptions {
  std::optional<std::string> control, resource, function;  // event tables
  std::vector<double> h;                                   // or three h values
  double k1 = 1.0, k2 = 1.0, k3 = 1.0;
  std::optional<int> to;  // target state index for path enumeration
  int max_length = 6;
  Rounding rounding = Rounding::Exact;
  std::string base = "e";
};

inline RunReport cmd_cube(const CubeOptions& opt) {
  const bool any_file = opt.control || opt.resource || opt.function;
  if (any_file && !opt.h.empty()) throw usage_error("give either three axis tables or --h, not both");
  if (!any_file && opt.h.empty()) throw usage_error("need --control/--resource/--function tables or --h HC HR HF");
  if (any_file && !(opt.control && opt.resource && opt.function))
    throw usage_error(std::string("missing axis table: ") + (!opt.control ? "--control" : !opt.resource ? "--resource" : "--function"));
  if (!any_file && opt.h.size() != 3) throw usage_error("--h takes exactly three values");
  if (opt.max_length < 0) throw usage_error("--max-len must be >= 0");

  RunReport r;
  r.command = "cube";
  r.rounding = opt.rounding;
  r.base = opt.base;
  CubeResult cube;
  const std::array<double, 3> ks{opt.k1, opt.k2, opt.k3};
  if (any_file) {
    const std::array<std::string, 3> paths{*opt.control, *opt.resource, *opt.function};
    const double base = log_base_from_name(opt.base);
    for (std::size_t a = 0; a < 3; ++a) {
      const AxisSample sample(kAxes[a], io::load_event_table(paths[a]), ks[a]);
      AxisResult ar;
      ar.axis = kAxes[a];
      ar.coefficient = ks[a];
      ar.detail = evaluate(sample.events().scaled(sample.coefficient()), opt.rounding, base);
      ar.h = ar.detail->h;
      cube.axes.push_back(std::move(ar));
    }
  } else {
    for (std::size_t a = 0; a < 3; ++a) {
      check_unit_interval(opt.h[a]);
      cube.axes.push_back({kAxes[a], ks[a], std::nullopt, opt.h[a]});
    }
  }
  cube.state = classify_cube(cube.axes[0].h, cube.axes[1].h, cube.axes[2].h);
  cube.neighbors = adjacent_states(cube.state);
  if (opt.to) {
    cube.target = CubeState::from_index(*opt.to);
    cube.max_length = opt.max_length;
    cube.paths = adaptation_paths(cube.state, *cube.target, opt.max_length);
  }
  r.cube = std::move(cube);
  return r;
}

struct HierarchyOptions {
  std::optional<std::string> edges;
  std::optional<std::string> ranks;
  std::optional<int> levels;     // build a complete tree instead of reading one
  std::optional<int> branching;
  std::string base = "e";
};

inline RunReport cmd_hierarchy(const HierarchyOptions& opt) {
  if (opt.edges && (opt.levels || opt.branching)) throw usage_error("give an edge list or --levels/--branching, not both");
  if (!opt.edges && !(opt.levels && opt.branching)) throw usage_error("need an edge list or both --levels and --branching");

  const CommandTree tree = opt.edges ? io::parse_edge_list(io::read_file(*opt.edges)) : build_tree(*opt.levels, *opt.branching);
  const RankTable ranks = opt.ranks ? io::parse_rank_table(io::read_file(*opt.ranks)) : RankTable::defaults();

  HierarchyResult h;
  h.agents = tree.size();
  h.depth = tree.depth();
  h.level_counts = tree.level_counts();
  h.ranks = ranks.entries();
  h.entropy = evaluate(level_distribution(tree, ranks), Rounding::Exact, log_base_from_name(opt.base));
  h.cohesion = cohesion_of(h.entropy.h);

  RunReport r;
  r.command = "hierarchy";
  r.base = opt.base;
  r.hierarchy = std::move(h);
  return r;
}

struct SimOptions {
  std::vector<std::string> scenarios;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<bool> controller;
  std::optional<int> ticks;
};

struct SimOutput {
  io::Scenario scenario;
  swarm::Summary summary;
  std::filesystem::path directory;
};

inline io::json sim_summary_json(const SimOutput& o) {
  io::json j = io::to_json(o.summary);
  j["scenario"] = io::to_json(o.scenario);
  j["tool"] = "nei";
  j["version"] = kVersion;
  return j;
}

/// Runs one scenario and writes metrics.csv, h_series.csv and summary.json
/// into `dir`.
inline SimOutput run_scenario(io::Scenario scenario, const std::filesystem::path& dir) {
  const swarm::RunResult result = swarm::run(scenario.config, scenario.environment);
  std::filesystem::create_directories(dir);
  SimOutput out{std::move(scenario), result.summary, dir};
  io::write_file((dir / "metrics.csv").string(), io::metrics_csv(result.series));
  io::write_file((dir / "h_series.csv").string(), io::h_series_csv(result.series));
  io::write_file((dir / "summary.json").string(), sim_summary_json(out).dump(2) + "\n");
  return out;
}

/// One isolated simulation per scenario; several scenarios run concurrently
/// and land in per-scenario subdirectories.
inline std::vector<SimOutput> cmd_sim(const SimOptions& opt) {
  if (opt.scenarios.empty()) throw usage_error("need at least one scenario file");
  if (opt.out_dir.empty()) throw usage_error("need --out DIR");

  std::vector<io::Scenario> scenarios;
  for (const auto& path : opt.scenarios) {
    io::Scenario s = io::load_scenario(path);
    if (opt.seed) s.environment.seed = *opt.seed;
    if (opt.controller) s.config.controller = *opt.controller;
    if (opt.ticks) s.config.ticks = *opt.ticks;
    swarm::validate(s.config);
    scenarios.push_back(std::move(s));
  }

  const std::filesystem::path root(opt.out_dir);
  if (scenarios.size() == 1) return {run_scenario(std::move(scenarios.front()), root)};

  std::vector<std::future<SimOutput>> jobs;
  for (std::size_t k = 0; k < scenarios.size(); ++k) {
    auto dir = root / (std::to_string(k) + "-" + scenarios[k].name);
    jobs.push_back(std::async(std::launch::async, run_scenario, std::move(scenarios[k]), dir));
  }
  std::vector<SimOutput> outputs;
  for (auto& j : jobs) outputs.push_back(j.get());
  return outputs;
}

}  // namespace nei::cli
