#pragma once

// Dominance hierarchies built from command units: a leader with directly
// subordinate agents, nested at most five levels deep. Group cohesion is
// the normalized entropy of the level occupancy weighted by level rank.

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nei/entropy.hpp"

namespace nei {

inline constexpr int kMaxHierarchyLevels = 5;

struct CommandNode {
  std::string id;
  int level = 1;
  std::optional<std::string> parent;
};

/// Rooted tree, root at level 1, depth <= kMaxHierarchyLevels.
class CommandTree {
 public:
  using Edge = std::pair<std::string, std::optional<std::string>>;  // (child, parent)

  /// Builds from (child, parent) pairs; the root is the one entry without a parent.
  static CommandTree from_edges(const std::vector<Edge>& edges) {
    if (edges.empty()) throw domain_error("command tree has no agents");
    std::unordered_map<std::string, std::optional<std::string>> parent_of;
    std::vector<std::string> order;
    std::optional<std::string> root;
    for (const auto& [child, parent] : edges) {
      if (!parent_of.emplace(child, parent).second) throw domain_error("agent '" + child + "' listed twice");
      order.push_back(child);
      if (!parent) {
        if (root) throw domain_error("more than one root: '" + *root + "' and '" + child + "'");
        root = child;
      } else if (*parent == child) {
        throw domain_error("agent '" + child + "' is its own parent");
      }
    }
    if (!root) throw domain_error("command tree has no root");
    for (const auto& [child, parent] : edges)
      if (parent && !parent_of.contains(*parent))
        throw domain_error("agent '" + child + "' has unknown parent '" + *parent + "'");

    std::unordered_map<std::string, int> level;
    level[*root] = 1;
    auto level_of = [&](const std::string& id) {
      std::vector<std::string> chain;
      std::string at = id;
      while (!level.contains(at)) {
        chain.push_back(at);
        if (chain.size() > parent_of.size()) throw domain_error("command tree contains a cycle through '" + id + "'");
        at = *parent_of.at(at);
      }
      int l = level.at(at);
      for (auto it = chain.rbegin(); it != chain.rend(); ++it) level[*it] = ++l;
      return level.at(id);
    };

    CommandTree tree;
    for (const auto& id : order) {
      const int l = level_of(id);
      if (l > kMaxHierarchyLevels)
        throw domain_error("agent '" + id + "' sits at level " + std::to_string(l) + "; a command hierarchy has at most " +
                           std::to_string(kMaxHierarchyLevels) + " levels");
      tree.nodes_.push_back({id, l, parent_of.at(id)});
    }
    return tree;
  }

  std::span<const CommandNode> nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return nodes_.size(); }

  int depth() const noexcept {
    int d = 0;
    for (const auto& n : nodes_) d = std::max(d, n.level);
    return d;
  }

  /// Agent count per level, index 0 = level 1.
  std::vector<std::size_t> level_counts() const {
    std::vector<std::size_t> counts(static_cast<std::size_t>(depth()), 0);
    for (const auto& n : nodes_) ++counts[static_cast<std::size_t>(n.level - 1)];
    return counts;
  }

 private:
  std::vector<CommandNode> nodes_;
};

/// Complete tree: every agent above the last level leads `branching`
/// subordinates. Ids are "1".."N" in breadth-first order.
inline CommandTree build_tree(int levels, int branching) {
  if (levels < 1) throw domain_error("a command tree needs at least one level");
  if (levels > kMaxHierarchyLevels)
    throw domain_error("requested " + std::to_string(levels) + " levels; a command hierarchy has at most " +
                       std::to_string(kMaxHierarchyLevels) + " levels");
  if (branching < 1) throw domain_error("branching must be >= 1");
  std::vector<CommandTree::Edge> edges{{"1", std::nullopt}};
  std::vector<int> frontier{1};
  int next_id = 2;
  for (int l = 2; l <= levels; ++l) {
    std::vector<int> below;
    for (int leader : frontier)
      for (int b = 0; b < branching; ++b) {
        edges.emplace_back(std::to_string(next_id), std::to_string(leader));
        below.push_back(next_id++);
      }
    frontier = std::move(below);
  }
  return CommandTree::from_edges(edges);
}

/// Dominance rank per hierarchy level. Ranks are positive and strictly
/// decreasing with depth.
class RankTable {
 public:
  explicit RankTable(std::map<int, double> ranks) : ranks_(std::move(ranks)) {
    if (ranks_.empty()) throw domain_error("rank table is empty");
    double previous = 0.0;
    bool first = true;
    for (const auto& [level, rank] : ranks_) {
      if (level < 1 || level > kMaxHierarchyLevels)
        throw domain_error("rank table level " + std::to_string(level) + " outside 1.." +
                           std::to_string(kMaxHierarchyLevels));
      if (!(rank > 0.0)) throw domain_error("rank for level " + std::to_string(level) + " must be positive");
      if (!first && !(rank < previous))
        throw domain_error("ranks must strictly decrease with level (level " + std::to_string(level) + ")");
      previous = rank;
      first = false;
    }
  }

  /// Field-observed ant dominance ranks by level.
  static RankTable defaults() { return RankTable({{1, 250.0}, {2, 20.0}, {3, 10.0}, {4, 5.0}, {5, 1.0}}); }

  double rank(int level) const {
    auto it = ranks_.find(level);
    if (it == ranks_.end()) throw domain_error("rank table has no entry for level " + std::to_string(level));
    return it->second;
  }

  const std::map<int, double>& entries() const noexcept { return ranks_; }

 private:
  std::map<int, double> ranks_;
};

/// One event per occupied level: x = level rank, P = occupancy share.
inline WeightedEvents level_distribution(const CommandTree& tree, const RankTable& ranks) {
  const auto counts = tree.level_counts();
  const double n = static_cast<double>(tree.size());
  std::vector<Event> events;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] == 0) continue;
    const int level = static_cast<int>(k) + 1;
    events.push_back({"level-" + std::to_string(level), ranks.rank(level), static_cast<double>(counts[k]) / n});
  }
  return WeightedEvents(std::move(events));
}

enum class Cohesion { Linear, Cohesive, Overcrowded };

inline constexpr std::string_view to_string(Cohesion c) {
  switch (c) {
    case Cohesion::Linear: return "linear";
    case Cohesion::Cohesive: return "cohesive";
    case Cohesion::Overcrowded: return "overcrowded";
  }
  return "?";
}

struct CohesionReport {
  double h = 0.0;
  Cohesion cohesion = Cohesion::Linear;
};

inline Cohesion cohesion_of(double h, const Thresholds& t = golden_thresholds()) {
  switch (zone_of(h, t)) {
    case Zone::Order: return Cohesion::Linear;
    case Zone::QuasiEquilibrium: return Cohesion::Cohesive;
    case Zone::Chaos: return Cohesion::Overcrowded;
  }
  return Cohesion::Linear;
}

/// Cohesion from observed level events (e.g. contact frequencies instead of occupancy).
inline CohesionReport cohesion(const WeightedEvents& levels) {
  const double h = normalized_entropy(reduce(levels));
  return {h, cohesion_of(h)};
}

inline CohesionReport cohesion(const CommandTree& tree, const RankTable& ranks = RankTable::defaults()) {
  return cohesion(level_distribution(tree, ranks));
}

struct LadderStep {
  double threshold = 0.0;  // minimum share of rejected contacts
  int level = 1;
};

/// Five-step ladder: the larger the share of rejected contacts, the higher the rank.
inline std::vector<LadderStep> default_rejection_ladder() {
  return {{0.8, 1}, {0.6, 2}, {0.4, 3}, {0.2, 4}, {0.0, 5}};
}

/// First (most dominant) ladder step whose threshold <= rejection_share.
/// Thresholds must strictly decrease and the last one must be 0.
inline int rank_from_rejection(double rejection_share, std::span<const LadderStep> ladder) {
  if (!(rejection_share >= 0.0 && rejection_share <= 1.0))
    throw domain_error("rejection share must lie in [0,1]");
  if (ladder.empty()) throw domain_error("rejection ladder is empty");
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    if (ladder[k].threshold < 0.0 || ladder[k].threshold > 1.0)
      throw domain_error("ladder threshold outside [0,1]");
    if (k > 0 && !(ladder[k].threshold < ladder[k - 1].threshold))
      throw domain_error("ladder thresholds must strictly decrease");
  }
  if (ladder.back().threshold != 0.0) throw domain_error("ladder must end at threshold 0");
  for (const auto& step : ladder)
    if (step.threshold <= rejection_share) return step.level;
  return ladder.back().level;
}

}  // namespace nei
