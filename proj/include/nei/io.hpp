#pragma once

// Text formats: event tables (CSV or JSON records), hierarchy edge lists,
// rank tables, simulation scenarios (JSON) and metrics exports (CSV).

#include <cctype>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <type_traits>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nei/entropy.hpp"
#include "nei/hierarchy.hpp"
#include "nei/swarm.hpp"

namespace nei::io {

using json = nlohmann::json;

class io_error : public error {
 public:
  using error::error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot write '" + path + "'");
  out << content;
  if (!out) throw io_error("write failed for '" + path + "'");
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t k = 0; k <= line.size(); ++k)
    if (k == line.size() || line[k] == sep) {
      out.push_back(trim(line.substr(start, k - start)));
      start = k + 1;
    }
  return out;
}

/// Whitespace-separated tokens.
inline std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t k = 0;
  while (k < line.size()) {
    while (k < line.size() && std::isspace(static_cast<unsigned char>(line[k]))) ++k;
    const std::size_t start = k;
    while (k < line.size() && !std::isspace(static_cast<unsigned char>(line[k]))) ++k;
    if (k > start) out.push_back(line.substr(start, k - start));
  }
  return out;
}

inline std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

inline std::optional<int> to_int(std::string_view s) {
  s = trim(s);
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

/// Shortest representation that parses back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ec == std::errc{} ? ptr : buf);
}

/// Calls `fn(line_number, line)` for each non-blank line not starting with '#'.
template <typename Fn>
void for_each_content_line(std::string_view text, Fn&& fn) {
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto t = trim(line);
    if (!t.empty() && t.front() != '#') fn(number, line);
    if (end == text.size()) break;
    start = end + 1;
  }
}

inline bool looks_like_json(std::string_view text) {
  const auto t = trim(text);
  return !t.empty() && (t.front() == '[' || t.front() == '{');
}

// ---------------------------------------------------------------------------
// Event tables

struct EventRow {
  std::size_t line = 0;  // 1-based source line (CSV) or record number (JSON)
  std::string label;
  double intensity = 0.0;
  std::optional<double> probability;
};

inline WeightedEvents build_events(const std::vector<EventRow>& rows, std::string_view where) {
  if (rows.empty()) throw parse_error("event table has no rows");
  const bool has_p = rows.front().probability.has_value();
  for (const auto& r : rows) {
    const std::string at = std::string(where) + " " + std::to_string(r.line) + " (event '" + r.label + "')";
    if (!(r.intensity > 0.0)) throw domain_error(at + ": intensity must be positive, got " + format_double(r.intensity));
    if (r.probability.has_value() != has_p) throw parse_error(at + ": probability given for some rows only");
    if (has_p && !(*r.probability > 0.0))
      throw domain_error(at + ": probability must be positive, got " + format_double(*r.probability));
  }
  if (!has_p) {
    std::vector<std::pair<std::string, double>> xs;
    for (const auto& r : rows) xs.emplace_back(r.label, r.intensity);
    return WeightedEvents::uniform(xs);
  }
  std::vector<Event> events;
  for (const auto& r : rows) events.push_back({r.label, r.intensity, *r.probability});
  return WeightedEvents(std::move(events));
}

/// CSV with header `label,intensity,probability`; the probability column
/// may be omitted, in which case all events are equally likely.
inline WeightedEvents parse_event_csv(std::string_view text) {
  bool header_seen = false;
  bool has_p = false;
  std::vector<EventRow> rows;
  for_each_content_line(text, [&](std::size_t number, std::string_view line) {
    const auto fields = split(line, ',');
    if (!header_seen) {
      if (fields.size() == 3 && fields[0] == "label" && fields[1] == "intensity" && fields[2] == "probability")
        has_p = true;
      else if (!(fields.size() == 2 && fields[0] == "label" && fields[1] == "intensity"))
        throw parse_error("expected header 'label,intensity,probability' or 'label,intensity'", number);
      header_seen = true;
      return;
    }
    const std::size_t expected = has_p ? 3 : 2;
    if (fields.size() != expected)
      throw parse_error("expected " + std::to_string(expected) + " fields, got " + std::to_string(fields.size()), number);
    if (fields[0].empty()) throw parse_error("empty label", number);
    EventRow row{number, std::string(fields[0]), 0.0, std::nullopt};
    auto x = to_double(fields[1]);
    if (!x) throw parse_error("intensity '" + std::string(fields[1]) + "' is not a number", number);
    row.intensity = *x;
    if (has_p) {
      auto p = to_double(fields[2]);
      if (!p) throw parse_error("probability '" + std::string(fields[2]) + "' is not a number", number);
      row.probability = *p;
    }
    rows.push_back(std::move(row));
  });
  if (!header_seen) throw parse_error("event table is empty");
  return build_events(rows, "line");
}

inline json parse_json_text(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw parse_error(std::string("invalid JSON: ") + e.what());
  }
}

/// `[{"label":..,"intensity":..,"probability":..}, ...]` or `{"events": [...]}`.
inline WeightedEvents parse_event_json(std::string_view text) {
  json doc = parse_json_text(text);
  if (doc.is_object()) {
    if (!doc.contains("events")) throw parse_error("JSON event table needs an 'events' array");
    doc = doc.at("events");
  }
  if (!doc.is_array()) throw parse_error("JSON event table must be an array of records");
  std::vector<EventRow> rows;
  std::size_t k = 0;
  for (const auto& rec : doc) {
    ++k;
    const std::string at = "record " + std::to_string(k);
    if (!rec.is_object()) throw parse_error(at + ": not an object");
    if (!rec.contains("label") || !rec.at("label").is_string()) throw parse_error(at + ": missing string 'label'");
    if (!rec.contains("intensity") || !rec.at("intensity").is_number())
      throw parse_error(at + ": missing numeric 'intensity'");
    EventRow row{k, rec.at("label").get<std::string>(), rec.at("intensity").get<double>(), std::nullopt};
    if (rec.contains("probability")) {
      if (!rec.at("probability").is_number()) throw parse_error(at + ": 'probability' must be a number");
      row.probability = rec.at("probability").get<double>();
    }
    rows.push_back(std::move(row));
  }
  return build_events(rows, "record");
}

inline WeightedEvents parse_event_table(std::string_view text) {
  return looks_like_json(text) ? parse_event_json(text) : parse_event_csv(text);
}

inline WeightedEvents load_event_table(const std::string& path) { return parse_event_table(read_file(path)); }

// ---------------------------------------------------------------------------
// Hierarchies

/// One `child parent` pair per line; the root appears alone.
inline CommandTree parse_edge_list(std::string_view text) {
  std::vector<CommandTree::Edge> edges;
  for_each_content_line(text, [&](std::size_t number, std::string_view line) {
    const auto t = tokens(line);
    if (t.size() == 1)
      edges.emplace_back(std::string(t[0]), std::nullopt);
    else if (t.size() == 2)
      edges.emplace_back(std::string(t[0]), std::string(t[1]));
    else
      throw parse_error("expected 'child parent' or a lone root id", number);
  });
  return CommandTree::from_edges(edges);
}

/// Lines of `level rank` (whitespace or comma separated); an optional
/// non-numeric header line is skipped.
inline RankTable parse_rank_table(std::string_view text) {
  std::map<int, double> ranks;
  bool first = true;
  for_each_content_line(text, [&](std::size_t number, std::string_view line) {
    std::string normalized(line);
    for (char& c : normalized)
      if (c == ',') c = ' ';
    const auto t = tokens(normalized);
    const bool is_first = std::exchange(first, false);
    if (t.size() != 2) throw parse_error("expected 'level rank'", number);
    auto level = to_int(t[0]);
    auto rank = to_double(t[1]);
    if (!level || !rank) {
      if (is_first) return;  // header
      throw parse_error("'" + std::string(trim(line)) + "' is not a level/rank pair", number);
    }
    if (!ranks.emplace(*level, *rank).second) throw parse_error("level " + std::to_string(*level) + " repeated", number);
  });
  return RankTable(std::move(ranks));
}

// ---------------------------------------------------------------------------
// Simulation scenarios

struct Scenario {
  std::string name = "scenario";
  swarm::SimConfig config;
  swarm::Environment environment;
};

namespace detail {

inline void reject_unknown_keys(const json& obj, const std::string& where, std::initializer_list<std::string_view> known) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (auto k : known) ok = ok || key == k;
    if (!ok) throw config_error(where + "." + key, "unknown field");
  }
}

template <typename T>
void read_field(const json& obj, const std::string& where, const char* key, T& out) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  const std::string field = where + "." + key;
  if constexpr (std::is_same_v<T, bool>) {
    if (!v.is_boolean()) throw config_error(field, "expected true or false");
    out = v.get<bool>();
  } else if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_integer()) throw config_error(field, "expected an integer");
    if constexpr (std::is_unsigned_v<T>) {
      if (v.is_number_unsigned() || v.get<std::int64_t>() >= 0)
        out = v.get<T>();
      else
        throw config_error(field, "expected a non-negative integer");
    } else {
      out = v.get<T>();
    }
  } else if constexpr (std::is_floating_point_v<T>) {
    if (!v.is_number()) throw config_error(field, "expected a number");
    out = v.get<T>();
  } else {
    if (!v.is_string()) throw config_error(field, "expected a string");
    out = v.get<T>();
  }
}

inline swarm::Regime regime_from_string(const std::string& s, const std::string& field) {
  if (s == "stable") return swarm::Regime::Stable;
  if (s == "moderate") return swarm::Regime::Moderate;
  if (s == "volatile") return swarm::Regime::Volatile;
  throw config_error(field, "expected one of stable, moderate, volatile; got '" + s + "'");
}

}  // namespace detail

/// Missing fields keep their defaults; unknown fields are rejected.
inline Scenario scenario_from_json(const json& doc) {
  using namespace detail;
  if (!doc.is_object()) throw config_error("scenario", "expected a JSON object");
  reject_unknown_keys(doc, "scenario", {"name", "config", "environment"});
  Scenario s;
  read_field(doc, "scenario", "name", s.name);

  if (doc.contains("config")) {
    const json& c = doc.at("config");
    if (!c.is_object()) throw config_error("config", "expected an object");
    reject_unknown_keys(c, "config",
                        {"robots", "ticks", "initial_energy", "sos_threshold", "advertise_threshold", "rank_floor",
                         "spend_rate", "storage_capacity", "controller", "warmup_ticks", "corridor"});
    auto& cfg = s.config;
    read_field(c, "config", "robots", cfg.robots);
    read_field(c, "config", "ticks", cfg.ticks);
    read_field(c, "config", "initial_energy", cfg.initial_energy);
    read_field(c, "config", "sos_threshold", cfg.sos_threshold);
    read_field(c, "config", "advertise_threshold", cfg.advertise_threshold);
    read_field(c, "config", "rank_floor", cfg.rank_floor);
    read_field(c, "config", "spend_rate", cfg.spend_rate);
    read_field(c, "config", "storage_capacity", cfg.storage_capacity);
    read_field(c, "config", "controller", cfg.controller);
    read_field(c, "config", "warmup_ticks", cfg.warmup_ticks);
    if (c.contains("corridor")) {
      const json& k = c.at("corridor");
      if (!k.is_array() || k.size() != 2 || !k[0].is_number() || !k[1].is_number())
        throw config_error("config.corridor", "expected [low, high]");
      cfg.corridor = {k[0].get<double>(), k[1].get<double>()};
    }
  }

  if (doc.contains("environment")) {
    const json& e = doc.at("environment");
    if (!e.is_object()) throw config_error("environment", "expected an object");
    reject_unknown_keys(e, "environment",
                        {"regime", "base_yields", "change_interval", "perturbation", "robot_noise", "seed"});
    auto& env = s.environment;
    if (e.contains("regime")) {
      std::string r;
      read_field(e, "environment", "regime", r);
      env.regime = regime_from_string(r, "environment.regime");
    }
    if (e.contains("base_yields")) {
      const json& y = e.at("base_yields");
      if (!y.is_array() || y.size() != swarm::kFunctionCount)
        throw config_error("environment.base_yields", "expected an array of 3 numbers");
      for (std::size_t f = 0; f < y.size(); ++f) {
        if (!y[f].is_number())
          throw config_error("environment.base_yields[" + std::to_string(f) + "]", "expected a number");
        env.base_yields[f] = y[f].get<double>();
      }
    }
    read_field(e, "environment", "change_interval", env.change_interval);
    read_field(e, "environment", "perturbation", env.perturbation);
    read_field(e, "environment", "robot_noise", env.robot_noise);
    read_field(e, "environment", "seed", env.seed);
  }

  swarm::validate(s.config);
  swarm::validate(s.environment);
  return s;
}

inline Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw config_error("scenario", std::string("invalid JSON: ") + e.what());
  }
  return scenario_from_json(doc);
}

inline Scenario load_scenario(const std::string& path) { return parse_scenario(read_file(path)); }

inline json to_json(const Scenario& s) {
  const auto& c = s.config;
  const auto& e = s.environment;
  return {{"name", s.name},
          {"config",
           {{"robots", c.robots},
            {"ticks", c.ticks},
            {"initial_energy", c.initial_energy},
            {"sos_threshold", c.sos_threshold},
            {"advertise_threshold", c.advertise_threshold},
            {"rank_floor", c.rank_floor},
            {"spend_rate", c.spend_rate},
            {"storage_capacity", c.storage_capacity},
            {"controller", c.controller},
            {"warmup_ticks", c.warmup_ticks},
            {"corridor", {c.corridor.low, c.corridor.high}}}},
          {"environment",
           {{"regime", std::string(swarm::to_string(e.regime))},
            {"base_yields", e.base_yields},
            {"change_interval", e.change_interval},
            {"perturbation", e.perturbation},
            {"robot_noise", e.robot_noise},
            {"seed", e.seed}}}};
}

// ---------------------------------------------------------------------------
// Metrics export. Column order is part of the interface.

inline constexpr std::string_view kMetricsHeader =
    "tick,h,zone,count_f1,count_f2,count_f3,mean_rank_f1,mean_rank_f2,mean_rank_f3,"
    "sos,advertising,switches,reassignments,solitary,disintegration";

inline std::string metrics_csv(const std::vector<swarm::TickMetrics>& series) {
  std::ostringstream out;
  out << kMetricsHeader << '\n';
  for (const auto& m : series) {
    out << m.tick << ',' << format_double(m.h) << ',' << to_string(m.zone);
    for (int c : m.counts) out << ',' << c;
    for (double r : m.mean_rank) out << ',' << format_double(r);
    out << ',' << m.sos << ',' << m.advertising << ',' << m.switches << ',' << m.reassignments << ','
        << (m.solitary ? 1 : 0) << ',' << (m.disintegration ? 1 : 0) << '\n';
  }
  return out.str();
}

inline std::string h_series_csv(const std::vector<swarm::TickMetrics>& series) {
  std::ostringstream out;
  out << "tick,h\n";
  for (const auto& m : series) out << m.tick << ',' << format_double(m.h) << '\n';
  return out.str();
}

inline json to_json(const swarm::Summary& s) {
  return {{"ticks", s.ticks},
          {"initial_h", s.initial_h},
          {"final_h", s.final_h},
          {"final_zone", std::string(to_string(s.final_zone))},
          {"corridor_fraction", s.corridor_fraction},
          {"disintegration", s.disintegration_ticks > 0},
          {"disintegration_ticks", s.disintegration_ticks},
          {"first_disintegration_tick", s.first_disintegration_tick},
          {"total_switches", s.total_switches},
          {"total_reassignments", s.total_reassignments},
          {"mean_h_first_decile", s.mean_h_first_decile},
          {"mean_h_last_decile", s.mean_h_last_decile}};
}

inline swarm::Summary summary_from_json(const json& j) {
  swarm::Summary s;
  s.ticks = j.at("ticks").get<int>();
  s.initial_h = j.at("initial_h").get<double>();
  s.final_h = j.at("final_h").get<double>();
  s.final_zone = zone_from_string(j.at("final_zone").get<std::string>());
  s.corridor_fraction = j.at("corridor_fraction").get<double>();
  s.disintegration_ticks = j.at("disintegration_ticks").get<int>();
  s.first_disintegration_tick = j.at("first_disintegration_tick").get<int>();
  s.total_switches = j.at("total_switches").get<int>();
  s.total_reassignments = j.at("total_reassignments").get<int>();
  s.mean_h_first_decile = j.at("mean_h_first_decile").get<double>();
  s.mean_h_last_decile = j.at("mean_h_last_decile").get<double>();
  return s;
}

}  // namespace nei::io
