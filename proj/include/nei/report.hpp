#pragma once

// Run reports emitted by the command-line tool, and their JSON form.

#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nei/cube.hpp"
#include "nei/entropy.hpp"
#include "nei/hierarchy.hpp"

namespace nei {

inline constexpr const char* kVersion = "0.1.0";

enum class Rounding { Exact, Paper2dp };

inline constexpr std::string_view to_string(Rounding r) { return r == Rounding::Exact ? "exact" : "paper-2dp"; }

inline Rounding rounding_from_string(std::string_view s) {
  if (s == "exact") return Rounding::Exact;
  if (s == "paper-2dp") return Rounding::Paper2dp;
  throw domain_error("unknown rounding mode '" + std::string(s) + "'");
}

/// Two significant digits, never below 0.01 (hand-tabulated precision).
inline double round_for_print(double q) {
  if (!(q > 0.0)) return 0.01;
  const double scale = std::pow(10.0, 1.0 - std::floor(std::log10(q)));
  return std::max(std::round(q * scale) / scale, 0.01);
}

/// Exact mode returns the distribution unchanged; paper-2dp rounds every
/// q_k for print and renormalizes.
inline NominalDistribution apply_rounding(const NominalDistribution& dist, Rounding mode) {
  if (mode == Rounding::Exact) return dist;
  std::vector<double> rounded;
  for (double q : dist.q()) rounded.push_back(round_for_print(q));
  return NominalDistribution::from_weights({dist.labels().begin(), dist.labels().end()}, rounded, dist.expectation());
}

struct EntropyResult {
  std::vector<Event> events;
  double expectation = 0.0;
  std::vector<std::string> labels;
  std::vector<double> q;
  double entropy_nat = 0.0;  // H, natural log
  double entropy = 0.0;      // H in the display base
  double h = 0.0;
  ZoneReport zone;

  friend bool operator==(const EntropyResult&, const EntropyResult&) = default;
};

inline EntropyResult evaluate(const WeightedEvents& events, Rounding rounding, double base) {
  const NominalDistribution dist = apply_rounding(reduce(events), rounding);
  EntropyResult r;
  r.events.assign(events.events().begin(), events.events().end());
  r.expectation = expectation(events);
  r.labels.assign(dist.labels().begin(), dist.labels().end());
  r.q.assign(dist.q().begin(), dist.q().end());
  r.entropy_nat = entropy(dist);
  r.entropy = entropy(dist, base);
  r.h = normalized_entropy(dist);
  r.zone = classify_zone(r.h);
  return r;
}

struct AxisResult {
  Axis axis = Axis::Control;
  double coefficient = 1.0;
  std::optional<EntropyResult> detail;  // absent when h was supplied directly
  double h = 0.0;

  friend bool operator==(const AxisResult&, const AxisResult&) = default;
};

struct CubeResult {
  std::vector<AxisResult> axes;
  CubeState state;
  std::vector<CubeState> neighbors;
  std::optional<CubeState> target;
  int max_length = 0;
  std::vector<CubePath> paths;

  friend bool operator==(const CubeResult&, const CubeResult&) = default;
};

struct HierarchyResult {
  std::size_t agents = 0;
  int depth = 0;
  std::vector<std::size_t> level_counts;
  std::map<int, double> ranks;
  EntropyResult entropy;
  Cohesion cohesion = Cohesion::Linear;

  friend bool operator==(const HierarchyResult&, const HierarchyResult&) = default;
};

struct RunReport {
  std::string command;
  std::string version = kVersion;
  Rounding rounding = Rounding::Exact;
  std::string base = "e";
  Thresholds thresholds = golden_thresholds();
  std::optional<EntropyResult> entropy;
  std::optional<CubeResult> cube;
  std::optional<HierarchyResult> hierarchy;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

inline double log_base_from_name(std::string_view name) {
  if (name == "2") return 2.0;
  if (name == "e") return std::exp(1.0);
  if (name == "10") return 10.0;
  throw domain_error("log base must be one of 2, e, 10");
}

// ---------------------------------------------------------------------------
// JSON. Infinite ratios are written as the string "inf".

namespace report_json {

using json = nlohmann::json;

inline json number(double v) { return std::isinf(v) ? json("inf") : json(v); }

inline double number(const json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
  return j.get<double>();
}

inline json zone_json(const ZoneReport& z) {
  return {{"h", z.h},
          {"zone", std::string(to_string(z.zone))},
          {"V", z.balance.uncertainty},
          {"C", z.balance.order},
          {"V_c", number(z.balance.uncertainty_per_order)},
          {"C_v", number(z.balance.order_per_uncertainty)},
          {"i", z.surplus}};
}

inline ZoneReport zone_from(const json& j) {
  ZoneReport z;
  z.h = j.at("h").get<double>();
  z.zone = zone_from_string(j.at("zone").get<std::string>());
  z.balance.uncertainty = j.at("V").get<double>();
  z.balance.order = j.at("C").get<double>();
  z.balance.uncertainty_per_order = number(j.at("V_c"));
  z.balance.order_per_uncertainty = number(j.at("C_v"));
  z.surplus = j.at("i").get<double>();
  return z;
}

inline json entropy_json(const EntropyResult& r) {
  json events = json::array();
  for (const auto& e : r.events)
    events.push_back({{"label", e.label}, {"intensity", e.intensity}, {"probability", e.probability}});
  json q = json::array();
  for (std::size_t k = 0; k < r.q.size(); ++k) q.push_back({{"label", r.labels[k]}, {"q", r.q[k]}});
  return {{"events", events}, {"expectation", r.expectation}, {"q", q},          {"H_nat", r.entropy_nat},
          {"H", r.entropy},   {"h", r.h},                     {"zone", zone_json(r.zone)}};
}

inline EntropyResult entropy_from(const json& j) {
  EntropyResult r;
  for (const auto& e : j.at("events"))
    r.events.push_back({e.at("label").get<std::string>(), e.at("intensity").get<double>(), e.at("probability").get<double>()});
  r.expectation = j.at("expectation").get<double>();
  for (const auto& q : j.at("q")) {
    r.labels.push_back(q.at("label").get<std::string>());
    r.q.push_back(q.at("q").get<double>());
  }
  r.entropy_nat = j.at("H_nat").get<double>();
  r.entropy = j.at("H").get<double>();
  r.h = j.at("h").get<double>();
  r.zone = zone_from(j.at("zone"));
  return r;
}

inline json state_json(const CubeState& s) {
  return {{"control", std::string(to_string(s.control))},
          {"resource", std::string(to_string(s.resource))},
          {"function", std::string(to_string(s.function))},
          {"index", s.index()}};
}

inline CubeState state_from(const json& j) {
  CubeState s{zone_from_string(j.at("control").get<std::string>()), zone_from_string(j.at("resource").get<std::string>()),
              zone_from_string(j.at("function").get<std::string>())};
  if (j.contains("index") && j.at("index").get<int>() != s.index())
    throw parse_error("cube state index does not match its zones");
  return s;
}

inline Axis axis_from_string(const std::string& s) {
  if (s == "control") return Axis::Control;
  if (s == "resource") return Axis::Resource;
  if (s == "function") return Axis::Function;
  throw parse_error("unknown axis '" + s + "'");
}

inline json cube_json(const CubeResult& c) {
  json axes = json::array();
  for (const auto& a : c.axes) {
    json aj = {{"axis", std::string(to_string(a.axis))}, {"coefficient", a.coefficient}, {"h", a.h}};
    if (a.detail) aj["detail"] = entropy_json(*a.detail);
    axes.push_back(aj);
  }
  json neighbors = json::array();
  for (const auto& n : c.neighbors) neighbors.push_back(state_json(n));
  json out = {{"axes", axes}, {"state", state_json(c.state)}, {"neighbors", neighbors}};
  if (c.target) {
    json paths = json::array();
    for (const auto& p : c.paths) {
      json idx = json::array();
      for (const auto& s : p) idx.push_back(s.index());
      paths.push_back(idx);
    }
    out["paths"] = {{"to", state_json(*c.target)}, {"max_length", c.max_length}, {"count", c.paths.size()}, {"paths", paths}};
  }
  return out;
}

inline CubeResult cube_from(const json& j) {
  CubeResult c;
  for (const auto& a : j.at("axes")) {
    AxisResult r;
    r.axis = axis_from_string(a.at("axis").get<std::string>());
    r.coefficient = a.at("coefficient").get<double>();
    r.h = a.at("h").get<double>();
    if (a.contains("detail")) r.detail = entropy_from(a.at("detail"));
    c.axes.push_back(std::move(r));
  }
  c.state = state_from(j.at("state"));
  for (const auto& n : j.at("neighbors")) c.neighbors.push_back(state_from(n));
  if (j.contains("paths")) {
    const json& p = j.at("paths");
    c.target = state_from(p.at("to"));
    c.max_length = p.at("max_length").get<int>();
    for (const auto& path : p.at("paths")) {
      CubePath cp;
      for (const auto& idx : path) cp.push_back(CubeState::from_index(idx.get<int>()));
      c.paths.push_back(std::move(cp));
    }
  }
  return c;
}

inline json hierarchy_json(const HierarchyResult& h) {
  json ranks = json::object();
  for (const auto& [level, rank] : h.ranks) ranks[std::to_string(level)] = rank;
  return {{"agents", h.agents},
          {"depth", h.depth},
          {"level_counts", h.level_counts},
          {"ranks", ranks},
          {"entropy", entropy_json(h.entropy)},
          {"h", h.entropy.h},
          {"cohesion", std::string(to_string(h.cohesion))}};
}

inline Cohesion cohesion_from_string(const std::string& s) {
  if (s == "linear") return Cohesion::Linear;
  if (s == "cohesive") return Cohesion::Cohesive;
  if (s == "overcrowded") return Cohesion::Overcrowded;
  throw parse_error("unknown cohesion class '" + s + "'");
}

inline HierarchyResult hierarchy_from(const json& j) {
  HierarchyResult h;
  h.agents = j.at("agents").get<std::size_t>();
  h.depth = j.at("depth").get<int>();
  h.level_counts = j.at("level_counts").get<std::vector<std::size_t>>();
  for (const auto& [level, rank] : j.at("ranks").items()) h.ranks[std::stoi(level)] = rank.get<double>();
  h.entropy = entropy_from(j.at("entropy"));
  h.cohesion = cohesion_from_string(j.at("cohesion").get<std::string>());
  return h;
}

}  // namespace report_json

inline nlohmann::json to_json(const RunReport& r) {
  using namespace report_json;
  json out = {{"tool", "nei"},
              {"version", r.version},
              {"command", r.command},
              {"rounding", std::string(to_string(r.rounding))},
              {"base", r.base},
              {"thresholds", {{"low", r.thresholds.low}, {"high", r.thresholds.high}}}};
  if (r.entropy) out["result"] = entropy_json(*r.entropy);
  if (r.cube) out["cube"] = cube_json(*r.cube);
  if (r.hierarchy) out["hierarchy"] = hierarchy_json(*r.hierarchy);
  return out;
}

inline RunReport report_from_json(const nlohmann::json& j) {
  using namespace report_json;
  try {
    RunReport r;
    r.version = j.at("version").get<std::string>();
    r.command = j.at("command").get<std::string>();
    r.rounding = rounding_from_string(j.at("rounding").get<std::string>());
    r.base = j.at("base").get<std::string>();
    r.thresholds = {j.at("thresholds").at("low").get<double>(), j.at("thresholds").at("high").get<double>()};
    if (j.contains("result")) r.entropy = entropy_from(j.at("result"));
    if (j.contains("cube")) r.cube = cube_from(j.at("cube"));
    if (j.contains("hierarchy")) r.hierarchy = hierarchy_from(j.at("hierarchy"));
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("malformed report: ") + e.what());
  }
}

}  // namespace nei
