#pragma once

// Normalized entropy index over finite schemes.
//
// A finite scheme pairs every event with an intensity x_k (the structural
// component, e.g. a rank) and a probability P_k (the stochastic component).
// Reduction folds both into one nominal distribution
//
//   q_k = x_k P_k / E(X),   E(X) = sum_k x_k P_k
//
// whose Shannon entropy, divided by log n, gives the index h in [0,1].
// h is split into order (h < h_low), the quasi-equilibrium corridor
// (h_low <= h <= h_high) and chaos (h > h_high), where the thresholds are
// the golden-section points of the unit interval.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "nei/error.hpp"

namespace nei {

inline constexpr double kProbabilitySumTolerance = 1e-9;

struct Event {
  std::string label;
  double intensity = 0.0;
  double probability = 0.0;

  friend bool operator==(const Event&, const Event&) = default;
};

/// Validated finite scheme: n >= 1 events, unique labels, x_k > 0,
/// P_k > 0 and sum P_k = 1 within kProbabilitySumTolerance.
class WeightedEvents {
 public:
  explicit WeightedEvents(std::vector<Event> events) : events_(std::move(events)) {
    if (events_.empty()) throw domain_error("finite scheme needs at least one event");
    std::unordered_set<std::string_view> seen;
    double total = 0.0;
    for (const auto& e : events_) {
      if (!seen.insert(e.label).second)
        throw domain_error("duplicate event label '" + e.label + "'");
      if (!(e.intensity > 0.0) || !std::isfinite(e.intensity))
        throw domain_error("event '" + e.label + "': intensity must be a positive finite number, got " +
                           std::to_string(e.intensity));
      if (!(e.probability > 0.0) || e.probability > 1.0 + kProbabilitySumTolerance)
        throw domain_error("event '" + e.label + "': probability must lie in (0,1], got " +
                           std::to_string(e.probability));
      total += e.probability;
    }
    if (std::abs(total - 1.0) > kProbabilitySumTolerance)
      throw domain_error("probabilities sum to " + std::to_string(total) + ", expected 1");
  }

  /// Equal probabilities 1/n for the given (label, intensity) pairs.
  static WeightedEvents uniform(const std::vector<std::pair<std::string, double>>& intensities) {
    if (intensities.empty()) throw domain_error("finite scheme needs at least one event");
    const double p = 1.0 / static_cast<double>(intensities.size());
    std::vector<Event> events;
    events.reserve(intensities.size());
    for (const auto& [label, x] : intensities) events.push_back({label, x, p});
    return WeightedEvents(std::move(events));
  }

  std::span<const Event> events() const noexcept { return events_; }
  std::size_t size() const noexcept { return events_.size(); }
  const Event& operator[](std::size_t k) const { return events_[k]; }

  /// Copy with every intensity multiplied by `factor` (> 0).
  WeightedEvents scaled(double factor) const {
    if (!(factor > 0.0)) throw domain_error("scale factor must be positive");
    auto copy = events_;
    for (auto& e : copy) e.intensity *= factor;
    return WeightedEvents(std::move(copy));
  }

  friend bool operator==(const WeightedEvents&, const WeightedEvents&) = default;

 private:
  std::vector<Event> events_;
};

/// Probability distribution over nominal event labels, q_k > 0, sum q_k = 1.
class NominalDistribution {
 public:
  /// Normalizes strictly positive weights into q. `expectation` records the
  /// E(X) the weights were reduced by (for reporting only).
  static NominalDistribution from_weights(std::vector<std::string> labels, std::span<const double> weights,
                                          double expectation) {
    if (weights.empty()) throw domain_error("distribution needs at least one event");
    if (labels.size() != weights.size()) throw domain_error("label and weight counts differ");
    double total = 0.0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
      if (!(weights[k] > 0.0) || !std::isfinite(weights[k]))
        throw domain_error("event '" + labels[k] + "': weight must be positive");
      total += weights[k];
    }
    NominalDistribution d;
    d.labels_ = std::move(labels);
    d.q_.reserve(weights.size());
    for (double w : weights) d.q_.push_back(w / total);
    // One renormalization pass absorbs the rounding left by the division.
    const double sum = std::accumulate(d.q_.begin(), d.q_.end(), 0.0);
    for (double& q : d.q_) q /= sum;
    d.expectation_ = expectation;
    return d;
  }

  std::span<const double> q() const noexcept { return q_; }
  std::span<const std::string> labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return q_.size(); }
  double expectation() const noexcept { return expectation_; }

 private:
  NominalDistribution() = default;

  std::vector<std::string> labels_;
  std::vector<double> q_;
  double expectation_ = 0.0;
};

/// E(X) = sum x_k P_k.
inline double expectation(const WeightedEvents& events) {
  double e = 0.0;
  for (const auto& ev : events.events()) e += ev.intensity * ev.probability;
  return e;
}

/// q_k = x_k P_k / E(X), labels kept in input order.
inline NominalDistribution reduce(const WeightedEvents& events) {
  std::vector<std::string> labels;
  std::vector<double> actions;
  labels.reserve(events.size());
  actions.reserve(events.size());
  for (const auto& ev : events.events()) {
    labels.push_back(ev.label);
    actions.push_back(ev.intensity * ev.probability);
  }
  return NominalDistribution::from_weights(std::move(labels), actions, expectation(events));
}

/// Equal-probability reduction q_k = x_k / sum x. Labels are "1".."n".
inline NominalDistribution reduce_uniform(std::span<const double> intensities) {
  if (intensities.empty()) throw domain_error("intensity list is empty");
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < intensities.size(); ++k) {
    if (!(intensities[k] > 0.0) || !std::isfinite(intensities[k]))
      throw domain_error("intensity " + std::to_string(k + 1) + " must be positive, got " +
                         std::to_string(intensities[k]));
    labels.push_back(std::to_string(k + 1));
  }
  const double mean = std::accumulate(intensities.begin(), intensities.end(), 0.0) /
                      static_cast<double>(intensities.size());
  return NominalDistribution::from_weights(std::move(labels), intensities, mean);
}

inline void check_log_base(double base) {
  if (!(base > 1.0) || !std::isfinite(base)) throw domain_error("logarithm base must be > 1");
}

/// H = -sum q log_base q, with 0 log 0 = 0. Accepts zero entries.
inline double entropy(std::span<const double> q, double base = std::exp(1.0)) {
  check_log_base(base);
  double h = 0.0;
  for (double p : q)
    if (p > 0.0) h -= p * std::log(p);
  return std::max(0.0, h) / std::log(base);
}

inline double entropy(const NominalDistribution& dist, double base = std::exp(1.0)) {
  return entropy(dist.q(), base);
}

/// h = H / log n over all n entries of q (zeros included in n). n <= 1 gives 0.
inline double normalized_entropy(std::span<const double> q) {
  if (q.size() <= 1) return 0.0;
  const double h = entropy(q) / std::log(static_cast<double>(q.size()));
  return std::clamp(h, 0.0, 1.0);
}

inline double normalized_entropy(const NominalDistribution& dist) { return normalized_entropy(dist.q()); }

struct SurplusInformation {
  double absolute = 0.0;    // I = log n - H, in the requested base
  double normalized = 0.0;  // i = 1 - h
};

inline SurplusInformation surplus_information(const NominalDistribution& dist, double base = std::exp(1.0)) {
  check_log_base(base);
  const double h_max = std::log(static_cast<double>(dist.size())) / std::log(base);
  return {std::max(0.0, h_max - entropy(dist, base)), 1.0 - normalized_entropy(dist)};
}

inline void check_unit_interval(double h) {
  if (!(h >= 0.0 && h <= 1.0)) throw domain_error("normalized entropy must lie in [0,1], got " + std::to_string(h));
}

/// Order/uncertainty decomposition of h. Ratios with a zero denominator are +inf.
struct OrderChaos {
  double uncertainty = 0.0;           // V = h
  double order = 0.0;                 // C = 1 - h
  double uncertainty_per_order = 0.0; // V_c = V / C
  double order_per_uncertainty = 0.0; // C_v = C / V

  friend bool operator==(const OrderChaos&, const OrderChaos&) = default;
};

inline OrderChaos order_chaos(double h) {
  check_unit_interval(h);
  constexpr double inf = std::numeric_limits<double>::infinity();
  const double v = h;
  const double c = 1.0 - h;
  return {v, c, c == 0.0 ? inf : v / c, v == 0.0 ? inf : c / v};
}

struct Thresholds {
  double low = 0.0;
  double high = 0.0;

  friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

/// Crossings V_c = C (h^2 - 3h + 1 = 0) and C_v = V (h^2 + h - 1 = 0) on
/// [0,1]; the roots are written in cancellation-free form.
inline Thresholds golden_thresholds() {
  const double root5 = std::sqrt(5.0);
  return {2.0 / (3.0 + root5), 2.0 / (1.0 + root5)};
}

enum class Zone { Order = 0, QuasiEquilibrium = 1, Chaos = 2 };

inline constexpr std::string_view to_string(Zone z) {
  switch (z) {
    case Zone::Order: return "order";
    case Zone::QuasiEquilibrium: return "quasi-equilibrium";
    case Zone::Chaos: return "chaos";
  }
  return "?";
}

inline Zone zone_from_string(std::string_view s) {
  if (s == "order") return Zone::Order;
  if (s == "quasi-equilibrium") return Zone::QuasiEquilibrium;
  if (s == "chaos") return Zone::Chaos;
  throw domain_error("unknown zone '" + std::string(s) + "'");
}

/// Corridor is closed on both ends.
inline Zone zone_of(double h, const Thresholds& t = golden_thresholds()) {
  check_unit_interval(h);
  if (h < t.low) return Zone::Order;
  if (h > t.high) return Zone::Chaos;
  return Zone::QuasiEquilibrium;
}

struct ZoneReport {
  double h = 0.0;
  Zone zone = Zone::Order;
  OrderChaos balance;
  double surplus = 0.0;  // i = 1 - h

  friend bool operator==(const ZoneReport&, const ZoneReport&) = default;
};

inline ZoneReport classify_zone(double h, const Thresholds& t = golden_thresholds()) {
  return {h, zone_of(h, t), order_chaos(h), 1.0 - h};
}

}  // namespace nei
