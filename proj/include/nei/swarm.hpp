#pragma once

// Deterministic energy-extraction swarm.
//
// Every robot runs one of three harvesting functions. Each tick it
// generates E_g from its function's yield and spends E_s; its rank is
// max(E_eff^2, floor) with E_eff = E_g - E_s. Robots that lose energy and
// run low send SOS; robots with a large store advertise their function.
// An SOS robot copies the function of the highest-ranked advertiser.
//
// The swarm index h is the normalized entropy over the three functions
// with x_k = mean rank on F_k and P_k = share of robots on F_k. An
// optional controller keeps h inside the quasi-equilibrium corridor.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "nei/entropy.hpp"

namespace nei::swarm {

inline constexpr int kFunctionCount = 3;

enum class Function : std::uint8_t { Light = 0, Wind = 1, Chemical = 2 };

inline constexpr std::string_view to_string(Function f) {
  switch (f) {
    case Function::Light: return "F1";
    case Function::Wind: return "F2";
    case Function::Chemical: return "F3";
  }
  return "?";
}

inline constexpr std::size_t slot(Function f) noexcept { return static_cast<std::size_t>(f); }

enum class Mode { Normal, Sos, Advertising, Solitary };

inline constexpr std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::Normal: return "normal";
    case Mode::Sos: return "sos";
    case Mode::Advertising: return "advertising";
    case Mode::Solitary: return "solitary";
  }
  return "?";
}

struct Robot {
  int id = 0;
  Function function = Function::Light;
  double energy_store = 0.0;
  double generated = 0.0;
  double spent = 0.0;
  double effective = 0.0;
  double rank = 1.0;
  Mode mode = Mode::Normal;

  friend bool operator==(const Robot&, const Robot&) = default;
};

enum class Regime { Stable, Moderate, Volatile };

inline constexpr std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::Stable: return "stable";
    case Regime::Moderate: return "moderate";
    case Regime::Volatile: return "volatile";
  }
  return "?";
}

/// Piecewise-constant yields per function. Outside the stable regime the
/// yields are redrawn every `change_interval` ticks as
/// base * (1 + perturbation * U(-1,1)). Each robot additionally sees
/// yield * (1 + robot_noise * U(-1,1)) every tick.
struct Environment {
  std::array<double, kFunctionCount> base_yields{1.4, 0.8, 0.7};
  Regime regime = Regime::Stable;
  int change_interval = 50;
  double perturbation = 0.0;
  double robot_noise = 0.1;
  std::uint64_t seed = 1;
};

struct SimConfig {
  int robots = 30;
  int ticks = 500;
  double initial_energy = 10.0;
  double sos_threshold = 5.0;
  double advertise_threshold = 20.0;
  double rank_floor = 1e-6;
  double spend_rate = 1.0;
  double storage_capacity = 40.0;
  bool controller = false;
  int warmup_ticks = 10;
  Thresholds corridor = golden_thresholds();
};

/// Throws config_error naming the first offending field.
inline void validate(const SimConfig& c) {
  if (c.robots < 3) throw config_error("config.robots", "need at least 3 robots, got " + std::to_string(c.robots));
  if (c.ticks < 0) throw config_error("config.ticks", "must be >= 0");
  if (!(c.initial_energy >= 0.0)) throw config_error("config.initial_energy", "must be >= 0");
  if (!(c.sos_threshold > 0.0)) throw config_error("config.sos_threshold", "must be positive");
  if (!(c.advertise_threshold > 0.0)) throw config_error("config.advertise_threshold", "must be positive");
  if (!(c.advertise_threshold > c.sos_threshold))
    throw config_error("config.advertise_threshold", "must exceed sos_threshold");
  if (!(c.rank_floor > 0.0)) throw config_error("config.rank_floor", "must be positive");
  if (!(c.spend_rate >= 0.0)) throw config_error("config.spend_rate", "must be >= 0");
  if (!(c.storage_capacity > c.advertise_threshold))
    throw config_error("config.storage_capacity", "must exceed advertise_threshold");
  if (!(c.initial_energy <= c.storage_capacity)) throw config_error("config.initial_energy", "must not exceed storage_capacity");
  if (c.warmup_ticks < 0) throw config_error("config.warmup_ticks", "must be >= 0");
  if (!(c.corridor.low > 0.0 && c.corridor.low < c.corridor.high && c.corridor.high < 1.0))
    throw config_error("config.corridor", "need 0 < low < high < 1");
}

inline void validate(const Environment& e) {
  for (std::size_t f = 0; f < e.base_yields.size(); ++f)
    if (!(e.base_yields[f] >= 0.0) || !std::isfinite(e.base_yields[f]))
      throw config_error("environment.base_yields[" + std::to_string(f) + "]", "must be a finite value >= 0");
  if (e.change_interval < 1) throw config_error("environment.change_interval", "must be >= 1");
  if (!(e.perturbation >= 0.0)) throw config_error("environment.perturbation", "must be >= 0");
  if (!(e.robot_noise >= 0.0 && e.robot_noise <= 1.0)) throw config_error("environment.robot_noise", "must lie in [0,1]");
}

/// Seeded generator. Uniform draws use the top 53 bits so sequences do not
/// depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 1) : engine_(seed) {}

  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double symmetric() { return 2.0 * uniform01() - 1.0; }

  friend bool operator==(const Rng&, const Rng&) = default;

 private:
  std::mt19937_64 engine_;
};

struct SwarmState {
  std::vector<Robot> robots;
  std::array<double, kFunctionCount> yields{};
  Rng rng;
  bool disintegrated = false;              // set by the controller; robots work solitarily
  std::optional<Function> blocked;         // controller veto on switching into this function

  friend bool operator==(const SwarmState&, const SwarmState&) = default;
};

/// Even thirds (remainder round-robin from F1), equal energy and rank.
inline SwarmState init_swarm(const SimConfig& config, const Environment& env = {}) {
  validate(config);
  validate(env);
  SwarmState s{{}, env.base_yields, Rng(env.seed), false, std::nullopt};
  const double initial_rank = std::max(config.initial_energy * config.initial_energy, config.rank_floor);
  const int per_function = config.robots / kFunctionCount;
  const int remainder = config.robots % kFunctionCount;
  int id = 0;
  for (int f = 0; f < kFunctionCount; ++f) {
    const int count = per_function + (f < remainder ? 1 : 0);
    for (int k = 0; k < count; ++k) {
      Robot r;
      r.id = id++;
      r.function = static_cast<Function>(f);
      r.energy_store = config.initial_energy;
      r.rank = initial_rank;
      s.robots.push_back(r);
    }
  }
  return s;
}

struct Switch {
  int robot = 0;
  Function from = Function::Light;
  Function to = Function::Light;

  friend bool operator==(const Switch&, const Switch&) = default;
};

struct StepEvents {
  int sos = 0;
  int advertising = 0;
  std::vector<Switch> switches;
};

struct StepResult {
  SwarmState state;
  StepEvents events;
};

inline double rank_for(double effective, double floor) {
  return effective > 0.0 ? std::max(effective * effective, floor) : floor;
}

/// Index of the advertiser with the largest rank, ties to the lowest id; -1 if none.
inline int best_advertiser(const std::vector<Robot>& robots) {
  int best = -1;
  for (std::size_t k = 0; k < robots.size(); ++k) {
    if (robots[k].mode != Mode::Advertising) continue;
    if (best < 0) {
      best = static_cast<int>(k);
      continue;
    }
    const Robot& b = robots[static_cast<std::size_t>(best)];
    if (robots[k].rank > b.rank || (robots[k].rank == b.rank && robots[k].id < b.id)) best = static_cast<int>(k);
  }
  return best;
}

/// Decides SOS switches for robots whose modes are already set. Switches
/// into `blocked` are vetoed. Pure.
inline std::vector<Switch> plan_switches(const std::vector<Robot>& robots, std::optional<Function> blocked = {}) {
  std::vector<Switch> out;
  const int adv = best_advertiser(robots);
  if (adv < 0) return out;
  const Function target = robots[static_cast<std::size_t>(adv)].function;
  if (blocked == target) return out;
  for (const Robot& r : robots)
    if (r.mode == Mode::Sos && r.function != target) out.push_back({r.id, r.function, target});
  return out;
}

/// One tick: energy, ranks, modes, switch decisions; switches land at tick end.
inline StepResult step(const SwarmState& state, const Environment& env, const SimConfig& config, int tick) {
  StepResult out{state, {}};
  SwarmState& s = out.state;

  if (env.regime != Regime::Stable && tick > 0 && tick % env.change_interval == 0)
    for (std::size_t f = 0; f < s.yields.size(); ++f)
      s.yields[f] = std::max(0.0, env.base_yields[f] * (1.0 + env.perturbation * s.rng.symmetric()));

  for (Robot& r : s.robots) {
    const double noise = env.robot_noise * s.rng.symmetric();
    r.generated = std::max(0.0, s.yields[slot(r.function)] * (1.0 + noise));
    r.spent = config.spend_rate;
    r.effective = r.generated - r.spent;
    r.energy_store = std::clamp(r.energy_store + r.effective, 0.0, config.storage_capacity);
    r.rank = rank_for(r.effective, config.rank_floor);
  }

  for (Robot& r : s.robots) {
    if (s.disintegrated)
      r.mode = Mode::Solitary;
    else if (r.effective < 0.0 && r.energy_store < config.sos_threshold)
      r.mode = Mode::Sos;
    else if (r.energy_store > config.advertise_threshold)
      r.mode = Mode::Advertising;
    else
      r.mode = Mode::Normal;
    out.events.sos += r.mode == Mode::Sos;
    out.events.advertising += r.mode == Mode::Advertising;
  }

  out.events.switches = plan_switches(s.robots, s.blocked);
  for (const Switch& sw : out.events.switches) s.robots[static_cast<std::size_t>(sw.robot)].function = sw.to;
  return out;
}

struct FunctionAggregates {
  double h = 0.0;
  std::array<int, kFunctionCount> counts{};
  std::array<double, kFunctionCount> mean_rank{};  // 0 for an empty function

  /// Function with the largest share q_k, ties to the lowest index.
  Function dominant() const noexcept {
    std::size_t best = 0;
    for (std::size_t f = 1; f < counts.size(); ++f)
      if (counts[f] * mean_rank[f] > counts[best] * mean_rank[best]) best = f;
    return static_cast<Function>(best);
  }
};

/// h over the three functions, n fixed at 3; empty functions have q = 0.
inline FunctionAggregates swarm_h(const std::vector<Robot>& robots) {
  FunctionAggregates a;
  if (robots.empty()) return a;
  std::array<double, kFunctionCount> rank_sum{};
  for (const Robot& r : robots) {
    ++a.counts[slot(r.function)];
    rank_sum[slot(r.function)] += r.rank;
  }
  const double n = static_cast<double>(robots.size());
  std::array<double, kFunctionCount> action{};
  double total = 0.0;
  for (int f = 0; f < kFunctionCount; ++f) {
    if (a.counts[f] == 0) continue;
    a.mean_rank[f] = rank_sum[f] / a.counts[f];
    action[f] = a.mean_rank[f] * (a.counts[f] / n);
    total += action[f];
  }
  std::array<double, kFunctionCount> q{};
  for (int f = 0; f < kFunctionCount; ++f) q[f] = action[f] / total;
  a.h = normalized_entropy(q);
  return a;
}

inline FunctionAggregates swarm_h(const SwarmState& s) { return swarm_h(s.robots); }

struct Reassignment {
  int robot = 0;
  Function from = Function::Light;
  Function to = Function::Light;

  friend bool operator==(const Reassignment&, const Reassignment&) = default;
};

struct ControlActions {
  std::vector<Reassignment> reassignments;
  std::optional<Function> blocked;  // h below the corridor: no SOS switching into the dominant function
  bool disintegration = false;      // h above the corridor: robots go solitary

  bool empty() const noexcept { return reassignments.empty() && !blocked && !disintegration; }
};

/// Distance of h from the corridor, 0 inside it.
inline double corridor_gap(double h, const Thresholds& corridor) {
  return h < corridor.low ? corridor.low - h : h > corridor.high ? h - corridor.high : 0.0;
}

/// Corridor controller.
///
///  h > high: disintegration; robots switch to solitary work.
///  h < low:  the swarm is over-specialised. Robots leave the dominant
///            function (largest share q_k), lowest rank first, one at a
///            time. Each goes to the function that brings the projected h
///            closest to the corridor, where a moved robot is expected to
///            earn the mean rank of its new function (its own rank if the
///            function is empty). Stops once the projection is inside the
///            corridor or no move gets closer. While h is low, SOS switches
///            into the dominant function are vetoed.
inline ControlActions control_policy(const SwarmState& state, double h, const SimConfig& config) {
  ControlActions out;
  if (h > config.corridor.high) {
    out.disintegration = true;
    return out;
  }
  if (h >= config.corridor.low) return out;

  std::vector<Robot> projected = state.robots;
  std::vector<bool> moved(projected.size(), false);
  auto agg = swarm_h(projected);
  const Function source = agg.dominant();
  out.blocked = source;

  while (corridor_gap(agg.h, config.corridor) > 0.0) {
    int pick = -1;
    for (std::size_t k = 0; k < projected.size(); ++k) {
      const Robot& r = projected[k];
      if (moved[k] || r.function != source) continue;
      if (pick < 0 || r.rank < projected[static_cast<std::size_t>(pick)].rank) pick = static_cast<int>(k);
    }
    if (pick < 0) break;

    Robot& r = projected[static_cast<std::size_t>(pick)];
    const Robot original = r;
    auto expected_rank = [&](int f) { return agg.counts[f] > 0 ? agg.mean_rank[f] : original.rank; };
    double best_gap = corridor_gap(agg.h, config.corridor);
    int best = -1;
    for (int f = 0; f < kFunctionCount; ++f) {
      if (static_cast<Function>(f) == source) continue;
      r.function = static_cast<Function>(f);
      r.rank = expected_rank(f);
      const double gap = corridor_gap(swarm_h(projected).h, config.corridor);
      if (gap < best_gap) {
        best_gap = gap;
        best = f;
      }
    }
    r = original;
    if (best < 0) break;

    out.reassignments.push_back({r.id, r.function, static_cast<Function>(best)});
    r.function = static_cast<Function>(best);
    r.rank = expected_rank(best);
    moved[static_cast<std::size_t>(pick)] = true;
    agg = swarm_h(projected);
  }
  return out;
}

inline void apply(SwarmState& s, const ControlActions& actions) {
  for (const auto& ra : actions.reassignments) s.robots[static_cast<std::size_t>(ra.robot)].function = ra.to;
  s.disintegrated = actions.disintegration;
  s.blocked = actions.blocked;
  if (actions.disintegration)
    for (Robot& r : s.robots) r.mode = Mode::Solitary;
}

struct TickMetrics {
  int tick = 0;
  double h = 0.0;
  Zone zone = Zone::Order;
  std::array<int, kFunctionCount> counts{};
  std::array<double, kFunctionCount> mean_rank{};
  int sos = 0;
  int advertising = 0;
  int switches = 0;
  int reassignments = 0;
  bool solitary = false;       // controller sent robots to solitary work
  bool disintegration = false; // h above the corridor after warm-up

  friend bool operator==(const TickMetrics&, const TickMetrics&) = default;
};

struct Summary {
  int ticks = 0;
  double initial_h = 0.0;
  double final_h = 0.0;
  Zone final_zone = Zone::Order;
  double corridor_fraction = 0.0;  // post-warm-up ticks with h in the corridor
  int disintegration_ticks = 0;
  int first_disintegration_tick = -1;
  int total_switches = 0;
  int total_reassignments = 0;
  double mean_h_first_decile = 0.0;
  double mean_h_last_decile = 0.0;

  friend bool operator==(const Summary&, const Summary&) = default;
};

struct RunResult {
  std::vector<TickMetrics> series;  // series[0] is the initial snapshot
  Summary summary;
};

inline Summary summarize(const std::vector<TickMetrics>& series, const SimConfig& config) {
  Summary s;
  s.ticks = static_cast<int>(series.size()) - 1;
  s.initial_h = series.front().h;
  s.final_h = series.back().h;
  s.final_zone = series.back().zone;
  int post_warmup = 0, in_corridor = 0;
  for (std::size_t t = 1; t < series.size(); ++t) {
    const auto& m = series[t];
    s.total_switches += m.switches;
    s.total_reassignments += m.reassignments;
    if (m.disintegration) {
      ++s.disintegration_ticks;
      if (s.first_disintegration_tick < 0) s.first_disintegration_tick = m.tick;
    }
    if (m.tick >= config.warmup_ticks) {
      ++post_warmup;
      in_corridor += m.zone == Zone::QuasiEquilibrium;
    }
  }
  s.corridor_fraction = post_warmup > 0 ? static_cast<double>(in_corridor) / post_warmup : 0.0;

  if (s.ticks == 0) {
    s.mean_h_first_decile = s.mean_h_last_decile = s.initial_h;
  } else {
    const std::size_t window = std::max<std::size_t>(1, static_cast<std::size_t>(s.ticks) / 10);
    double first = 0.0, last = 0.0;
    for (std::size_t k = 0; k < window; ++k) {
      first += series[1 + k].h;
      last += series[series.size() - 1 - k].h;
    }
    s.mean_h_first_decile = first / static_cast<double>(window);
    s.mean_h_last_decile = last / static_cast<double>(window);
  }
  return s;
}

inline TickMetrics snapshot(int tick, const FunctionAggregates& agg, const Thresholds& corridor) {
  TickMetrics m;
  m.tick = tick;
  m.h = agg.h;
  m.zone = zone_of(agg.h, corridor);
  m.counts = agg.counts;
  m.mean_rank = agg.mean_rank;
  return m;
}

/// Full simulation: snapshot at tick 0, then `config.ticks` steps.
inline RunResult run(const SimConfig& config, const Environment& env) {
  SwarmState state = init_swarm(config, env);
  RunResult result;
  result.series.reserve(static_cast<std::size_t>(config.ticks) + 1);
  result.series.push_back(snapshot(0, swarm_h(state), config.corridor));

  for (int tick = 1; tick <= config.ticks; ++tick) {
    auto [next, events] = step(state, env, config, tick);
    state = std::move(next);
    const auto agg = swarm_h(state);
    TickMetrics m = snapshot(tick, agg, config.corridor);
    m.sos = events.sos;
    m.advertising = events.advertising;
    m.switches = static_cast<int>(events.switches.size());
    const bool engaged = tick >= config.warmup_ticks;
    m.disintegration = engaged && agg.h > config.corridor.high;
    if (config.controller && engaged) {
      const ControlActions actions = control_policy(state, agg.h, config);
      m.reassignments = static_cast<int>(actions.reassignments.size());
      m.solitary = actions.disintegration;
      apply(state, actions);
    }
    result.series.push_back(m);
  }
  result.summary = summarize(result.series, config);
  return result;
}

}  // namespace nei::swarm
