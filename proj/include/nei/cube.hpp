#pragma once

// The 3x3x3 "thinking cube": one entropy zone on each of the control,
// resource and function interaction axes. Transitions move one axis by one
// zone at a time, so the state graph is the 3x3x3 grid lattice.

#include <algorithm>
#include <array>
#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "nei/entropy.hpp"

namespace nei {

enum class Axis { Control, Resource, Function };

inline constexpr std::string_view to_string(Axis a) {
  switch (a) {
    case Axis::Control: return "control";
    case Axis::Resource: return "resource";
    case Axis::Function: return "function";
  }
  return "?";
}

/// Per-axis measurement. Intensities are the structural component (rank,
/// resource attractiveness or function fidelity) before the axis
/// coefficient is applied; probabilities are the stochastic component.
class AxisSample {
 public:
  AxisSample(Axis axis, WeightedEvents events, double coefficient = 1.0)
      : axis_(axis), events_(std::move(events)), coefficient_(coefficient) {
    if (!(coefficient_ > 0.0)) throw domain_error(std::string(to_string(axis)) + " axis coefficient must be positive");
  }

  Axis axis() const noexcept { return axis_; }
  const WeightedEvents& events() const noexcept { return events_; }
  double coefficient() const noexcept { return coefficient_; }

 private:
  Axis axis_;
  WeightedEvents events_;
  double coefficient_;
};

/// The coefficient cancels through E(X); it is applied anyway.
inline double axis_h(const AxisSample& sample) {
  return normalized_entropy(reduce(sample.events().scaled(sample.coefficient())));
}

struct CubeState {
  Zone control = Zone::Order;
  Zone resource = Zone::Order;
  Zone function = Zone::Order;

  /// 1..27, control-major.
  constexpr int index() const noexcept {
    return 9 * static_cast<int>(control) + 3 * static_cast<int>(resource) + static_cast<int>(function) + 1;
  }

  static constexpr CubeState from_index(int index) {
    if (index < 1 || index > 27) throw domain_error("cube index must be in 1..27");
    const int z = index - 1;
    return {static_cast<Zone>(z / 9), static_cast<Zone>((z / 3) % 3), static_cast<Zone>(z % 3)};
  }

  constexpr Zone& axis(Axis a) noexcept {
    return a == Axis::Control ? control : a == Axis::Resource ? resource : function;
  }
  constexpr Zone axis(Axis a) const noexcept {
    return a == Axis::Control ? control : a == Axis::Resource ? resource : function;
  }

  friend constexpr bool operator==(const CubeState&, const CubeState&) = default;
  friend constexpr auto operator<=>(const CubeState& a, const CubeState& b) noexcept {
    return a.index() <=> b.index();
  }
};

inline constexpr std::array<Axis, 3> kAxes{Axis::Control, Axis::Resource, Axis::Function};
inline constexpr int kCubeStateCount = 27;

inline std::array<CubeState, kCubeStateCount> all_cube_states() {
  std::array<CubeState, kCubeStateCount> out{};
  for (int i = 1; i <= kCubeStateCount; ++i) out[i - 1] = CubeState::from_index(i);
  return out;
}

inline CubeState classify_cube(double control_h, double resource_h, double function_h,
                               const Thresholds& t = golden_thresholds()) {
  return {zone_of(control_h, t), zone_of(resource_h, t), zone_of(function_h, t)};
}

/// States one zone step away on exactly one axis, ascending by index.
inline std::vector<CubeState> adjacent_states(const CubeState& s) {
  std::vector<CubeState> out;
  for (Axis a : kAxes) {
    const int z = static_cast<int>(s.axis(a));
    for (int dz : {-1, 1}) {
      const int nz = z + dz;
      if (nz < 0 || nz > 2) continue;
      CubeState n = s;
      n.axis(a) = static_cast<Zone>(nz);
      out.push_back(n);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

using CubePath = std::vector<CubeState>;

/// Length of a path in transitions.
inline std::size_t path_length(const CubePath& p) { return p.empty() ? 0 : p.size() - 1; }

/// Every simple path from `from` to `to` with at most `max_length`
/// transitions, shortest first, ties in lexicographic index order.
inline std::vector<CubePath> adaptation_paths(const CubeState& from, const CubeState& to, int max_length) {
  if (max_length < 0) throw domain_error("max_length must be >= 0");
  std::vector<CubePath> paths;
  std::array<bool, kCubeStateCount + 1> on_path{};
  CubePath current{from};
  on_path[from.index()] = true;

  auto dfs = [&](auto&& self, const CubeState& at) -> void {
    if (at == to) {
      paths.push_back(current);
      return;
    }
    if (static_cast<int>(path_length(current)) >= max_length) return;
    for (const CubeState& next : adjacent_states(at)) {
      if (on_path[next.index()]) continue;
      on_path[next.index()] = true;
      current.push_back(next);
      self(self, next);
      current.pop_back();
      on_path[next.index()] = false;
    }
  };
  dfs(dfs, from);

  std::stable_sort(paths.begin(), paths.end(), [](const CubePath& a, const CubePath& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  });
  return paths;
}

}  // namespace nei
