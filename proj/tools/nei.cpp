// nei: normalized entropy index tool.
//
//   nei nei FILE [--rounding exact|paper-2dp] [--base 2|e|10]
//   nei cube (--control F --resource F --function F | --h HC HR HF) [--to IDX --max-len N]
//   nei hierarchy (EDGES [--ranks FILE] | --levels L --branching B)
//   nei sim SCENARIO... --out DIR [--seed S] [--controller on|off] [--ticks T]
//
// Exit codes: 0 ok, 1 usage, 2 parse, 3 domain, 4 config, 5 io.

#include <iostream>

#include <CLI11.hpp>

#include "nei/cli.hpp"

namespace {

using namespace nei;
using nei::cli::ExitCode;

int fail(ExitCode code, const std::string& kind, const std::string& what) {
  std::cerr << "nei: " << kind << " error: " << what << '\n';
  return code;
}

void print(const nlohmann::json& j, bool compact) { std::cout << (compact ? j.dump() : j.dump(2)) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Normalized entropy index: finite schemes, thinking cube, command hierarchies, swarm simulation"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();
  bool compact = false;
  app.add_flag("--compact", compact, "Single-line JSON output");

  std::string rounding = "exact";
  std::string base = "e";
  const std::vector<std::string> rounding_modes{"exact", "paper-2dp"};
  const std::vector<std::string> bases{"2", "e", "10"};

  cli::NeiOptions nei_opt;
  auto* nei_cmd = app.add_subcommand("nei", "Normalized entropy index of an event table");
  nei_cmd->add_option("input", nei_opt.input, "CSV (label,intensity[,probability]) or JSON records")->required();
  nei_cmd->add_option("--rounding", rounding, "exact or paper-2dp")->check(CLI::IsMember(rounding_modes));
  nei_cmd->add_option("--base", base, "Log base for the raw entropy H")->check(CLI::IsMember(bases));

  cli::CubeOptions cube_opt;
  std::string control, resource, function;
  int to = 0;
  auto* cube_cmd = app.add_subcommand("cube", "Thinking-cube state from three axes");
  cube_cmd->set_help_flag("--help", "Print this help message and exit");  // -h would clash with --h
  cube_cmd->add_option("--control", control, "Control-axis event table");
  cube_cmd->add_option("--resource", resource, "Resource-axis event table");
  cube_cmd->add_option("--function", function, "Function-axis event table");
  cube_cmd->add_option("--h", cube_opt.h, "Three h values: control resource function")->expected(3);
  cube_cmd->add_option("--k1", cube_opt.k1, "Control-axis coefficient");
  cube_cmd->add_option("--k2", cube_opt.k2, "Resource-axis coefficient");
  cube_cmd->add_option("--k3", cube_opt.k3, "Function-axis coefficient");
  auto* to_opt = cube_cmd->add_option("--to", to, "Target state index (1..27) for path enumeration")->check(CLI::Range(1, 27));
  cube_cmd->add_option("--max-len", cube_opt.max_length, "Longest path to enumerate");
  cube_cmd->add_option("--rounding", rounding)->check(CLI::IsMember(rounding_modes));
  cube_cmd->add_option("--base", base)->check(CLI::IsMember(bases));

  cli::HierarchyOptions hier_opt;
  std::string edges, ranks;
  int levels = 0, branching = 0;
  auto* hier_cmd = app.add_subcommand("hierarchy", "Cohesion of a command hierarchy");
  hier_cmd->add_option("edges", edges, "Edge list: 'child parent' per line, root alone");
  hier_cmd->add_option("--ranks", ranks, "Rank table: 'level rank' per line");
  auto* levels_opt = hier_cmd->add_option("--levels", levels, "Build a complete tree with this many levels");
  auto* branching_opt = hier_cmd->add_option("--branching", branching, "Subordinates per leader");
  hier_cmd->add_option("--base", base)->check(CLI::IsMember(bases));

  cli::SimOptions sim_opt;
  std::uint64_t seed = 0;
  int ticks = 0;
  std::string controller;
  auto* sim_cmd = app.add_subcommand("sim", "Run swarm simulation scenarios");
  sim_cmd->add_option("scenarios", sim_opt.scenarios, "Scenario JSON files")->required();
  sim_cmd->add_option("--out", sim_opt.out_dir, "Output directory")->required();
  auto* seed_opt = sim_cmd->add_option("--seed", seed, "Override the environment seed");
  auto* controller_opt =
      sim_cmd->add_option("--controller", controller, "Override the controller")->check(CLI::IsMember({"on", "off"}));
  auto* ticks_opt = sim_cmd->add_option("--ticks", ticks, "Override the tick count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kUsage;
  }

  try {
    if (*nei_cmd) {
      nei_opt.rounding = rounding_from_string(rounding);
      nei_opt.base = base;
      print(to_json(cli::cmd_nei(nei_opt)), compact);
    } else if (*cube_cmd) {
      if (!control.empty()) cube_opt.control = control;
      if (!resource.empty()) cube_opt.resource = resource;
      if (!function.empty()) cube_opt.function = function;
      if (*to_opt) cube_opt.to = to;
      cube_opt.rounding = rounding_from_string(rounding);
      cube_opt.base = base;
      print(to_json(cli::cmd_cube(cube_opt)), compact);
    } else if (*hier_cmd) {
      if (!edges.empty()) hier_opt.edges = edges;
      if (!ranks.empty()) hier_opt.ranks = ranks;
      if (*levels_opt) hier_opt.levels = levels;
      if (*branching_opt) hier_opt.branching = branching;
      hier_opt.base = base;
      print(to_json(cli::cmd_hierarchy(hier_opt)), compact);
    } else if (*sim_cmd) {
      if (*seed_opt) sim_opt.seed = seed;
      if (*controller_opt) sim_opt.controller = controller == "on";
      if (*ticks_opt) sim_opt.ticks = ticks;
      const auto outputs = cli::cmd_sim(sim_opt);
      nlohmann::json j = nlohmann::json::array();
      for (const auto& o : outputs) {
        auto s = cli::sim_summary_json(o);
        s["directory"] = o.directory.string();
        j.push_back(std::move(s));
      }
      print(outputs.size() == 1 ? j.front() : j, compact);
    }
  } catch (const cli::usage_error& e) {
    return fail(cli::kUsage, "usage", e.what());
  } catch (const parse_error& e) {
    return fail(cli::kParse, "parse", e.what());
  } catch (const domain_error& e) {
    return fail(cli::kDomain, "domain", e.what());
  } catch (const config_error& e) {
    return fail(cli::kConfig, "config", e.what());
  } catch (const io::io_error& e) {
    return fail(cli::kIo, "io", e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(cli::kIo, "io", e.what());
  }
  return cli::kOk;
}
