#pragma once

// Reference computations used by the tests. They share no code with the
// library: plain loops in long double, coordinates instead of zone enums,
// closed-form level counts instead of trees.

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace oracle {

struct Reduced {
  long double expectation = 0;
  std::vector<long double> q;
  long double entropy = 0;  // natural log
  long double h = 0;
};

inline Reduced reduce(const std::vector<double>& x, const std::vector<double>& p) {
  Reduced r;
  for (std::size_t k = 0; k < x.size(); ++k) r.expectation += static_cast<long double>(x[k]) * p[k];
  for (std::size_t k = 0; k < x.size(); ++k) r.q.push_back(static_cast<long double>(x[k]) * p[k] / r.expectation);
  for (long double q : r.q)
    if (q > 0) r.entropy -= q * std::log(q);
  r.h = x.size() > 1 ? r.entropy / std::log(static_cast<long double>(x.size())) : 0;
  return r;
}

inline Reduced reduce_uniform(const std::vector<double>& x) {
  return reduce(x, std::vector<double>(x.size(), 1.0 / static_cast<double>(x.size())));
}

// Thinking cube as the 3x3x3 grid of coordinates (control, resource, function).
using Cell = std::array<int, 3>;

inline int cell_index(const Cell& c) { return 9 * c[0] + 3 * c[1] + c[2] + 1; }

inline Cell cell_of(int index) {
  const int i = index - 1;
  return {i / 9, (i / 3) % 3, i % 3};
}

inline bool lattice_neighbors(const Cell& a, const Cell& b) {
  int diff = 0;
  for (int k = 0; k < 3; ++k) diff += std::abs(a[k] - b[k]);
  return diff == 1;
}

inline int lattice_edge_count() {
  int edges = 0;
  for (int i = 1; i <= 27; ++i)
    for (int j = i + 1; j <= 27; ++j) edges += lattice_neighbors(cell_of(i), cell_of(j));
  return edges;
}

// Number of simple paths from -> to with at most max_len steps.
inline std::uint64_t simple_path_count(int from, int to, int max_len) {
  std::uint64_t count = 0;
  std::uint32_t visited = 0;
  auto walk = [&](auto&& self, int at, int steps) -> void {
    if (at == to) {
      ++count;
      return;
    }
    if (steps == max_len) return;
    for (int next = 1; next <= 27; ++next) {
      if (visited & (1u << next)) continue;
      if (!lattice_neighbors(cell_of(at), cell_of(next))) continue;
      visited |= 1u << next;
      self(self, next, steps + 1);
      visited &= ~(1u << next);
    }
  };
  visited = 1u << from;
  walk(walk, from, 0);
  return count;
}

inline int manhattan(int a, int b) {
  const Cell ca = cell_of(a), cb = cell_of(b);
  return std::abs(ca[0] - cb[0]) + std::abs(ca[1] - cb[1]) + std::abs(ca[2] - cb[2]);
}

// Complete command tree: branching^(l-1) agents on level l; event
// probability is the level share, intensity the level rank.
inline Reduced complete_tree(int levels, int branching, const std::array<double, 5>& ranks) {
  std::vector<double> counts;
  double total = 0;
  for (int l = 0; l < levels; ++l) {
    counts.push_back(std::pow(static_cast<double>(branching), l));
    total += counts.back();
  }
  std::vector<double> x, p;
  for (int l = 0; l < levels; ++l) {
    x.push_back(ranks[static_cast<std::size_t>(l)]);
    p.push_back(counts[static_cast<std::size_t>(l)] / total);
  }
  return reduce(x, p);
}

inline constexpr std::array<double, 5> kDefaultRanks{250, 20, 10, 5, 1};

}  // namespace oracle
