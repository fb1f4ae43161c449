#include <cmath>

#include <gtest/gtest.h>

#include "nei/hierarchy.hpp"
#include "oracle.hpp"

using namespace nei;

namespace {

CommandTree chain(int length) {
  std::vector<CommandTree::Edge> edges{{"n1", std::nullopt}};
  for (int k = 2; k <= length; ++k) edges.emplace_back("n" + std::to_string(k), "n" + std::to_string(k - 1));
  return CommandTree::from_edges(edges);
}

}  // namespace

TEST(CommandTree, LevelsFollowParents) {
  const auto tree = CommandTree::from_edges({{"c", "b"}, {"a", std::nullopt}, {"b", "a"}, {"d", "a"}});
  EXPECT_EQ(tree.size(), 4u);
  EXPECT_EQ(tree.depth(), 3);
  EXPECT_EQ(tree.level_counts(), (std::vector<std::size_t>{1, 2, 1}));
}

TEST(CommandTree, RejectsMalformedInput) {
  EXPECT_THROW(CommandTree::from_edges({}), domain_error);
  EXPECT_THROW(CommandTree::from_edges({{"a", std::nullopt}, {"b", std::nullopt}}), domain_error);
  EXPECT_THROW(CommandTree::from_edges({{"a", "b"}, {"b", "a"}}), domain_error);
  EXPECT_THROW(CommandTree::from_edges({{"a", std::nullopt}, {"b", "zz"}}), domain_error);
  EXPECT_THROW(CommandTree::from_edges({{"a", std::nullopt}, {"a", "a"}}), domain_error);
  EXPECT_THROW(CommandTree::from_edges({{"r", std::nullopt}, {"a", "b"}, {"b", "a"}}), domain_error);
}

TEST(CommandTree, SixLevelsCiteTheCap) {
  EXPECT_NO_THROW(chain(5));
  try {
    chain(6);
    FAIL() << "six-level chain accepted";
  } catch (const domain_error& e) {
    EXPECT_NE(std::string(e.what()).find("at most 5 levels"), std::string::npos);
  }
  EXPECT_THROW(build_tree(6, 1), domain_error);
}

TEST(BuildTree, CountsArePowersOfBranching) {
  const auto tree = build_tree(4, 3);
  EXPECT_EQ(tree.level_counts(), (std::vector<std::size_t>{1, 3, 9, 27}));
  EXPECT_EQ(tree.size(), 40u);
  EXPECT_THROW(build_tree(0, 2), domain_error);
  EXPECT_THROW(build_tree(3, 0), domain_error);
}

TEST(RankTable, Validation) {
  EXPECT_EQ(RankTable::defaults().rank(1), 250.0);
  EXPECT_EQ(RankTable::defaults().rank(5), 1.0);
  EXPECT_THROW(RankTable({{1, 10}, {2, 10}}), domain_error);
  EXPECT_THROW(RankTable({{1, 10}, {2, -1}}), domain_error);
  EXPECT_THROW(RankTable(std::map<int, double>{{0, 10}}), domain_error);
  EXPECT_THROW(RankTable(std::map<int, double>{{6, 10}}), domain_error);
  EXPECT_THROW(RankTable(std::map<int, double>{{1, 10}}).rank(2), domain_error);
}

TEST(LevelDistribution, OccupancyShares) {
  const auto ev = level_distribution(build_tree(2, 3), RankTable::defaults());
  ASSERT_EQ(ev.size(), 2u);
  EXPECT_DOUBLE_EQ(ev[0].probability, 0.25);
  EXPECT_DOUBLE_EQ(ev[1].probability, 0.75);
  EXPECT_EQ(ev[0].intensity, 250.0);
  EXPECT_EQ(ev[1].intensity, 20.0);
  EXPECT_THROW(level_distribution(build_tree(3, 1), RankTable(std::map<int, double>{{1, 9}, {2, 3}})), domain_error);
}

TEST(Cohesion, RootAndOneChild) {
  const double q1 = 250.0 / 270, q2 = 20.0 / 270;
  const double h = -(q1 * std::log(q1) + q2 * std::log(q2)) / std::log(2.0);
  const auto r = cohesion(build_tree(2, 1));
  EXPECT_NEAR(r.h, h, 1e-12);
  EXPECT_EQ(r.cohesion, cohesion_of(h));
}

TEST(Cohesion, FiveLevelChainIsLinear) {
  const auto ref = oracle::complete_tree(5, 1, oracle::kDefaultRanks);
  const auto r = cohesion(chain(5));
  EXPECT_NEAR(r.h, static_cast<double>(ref.h), 1e-12);
  EXPECT_NEAR(r.h, 0.318, 1e-3);
  EXPECT_EQ(r.cohesion, Cohesion::Linear);
}

TEST(Cohesion, SingleAgent) {
  const auto r = cohesion(chain(1));
  EXPECT_EQ(r.h, 0.0);
  EXPECT_EQ(r.cohesion, Cohesion::Linear);
}

TEST(Cohesion, ClassFollowsZones) {
  EXPECT_EQ(cohesion_of(0.2), Cohesion::Linear);
  EXPECT_EQ(cohesion_of(0.5), Cohesion::Cohesive);
  EXPECT_EQ(cohesion_of(0.7), Cohesion::Overcrowded);
}

TEST(Cohesion, SweepMatchesClosedFormOracle) {
  for (int levels = 1; levels <= 5; ++levels)
    for (int branching = 1; branching <= 4; ++branching) {
      const auto ref = oracle::complete_tree(levels, branching, oracle::kDefaultRanks);
      EXPECT_NEAR(cohesion(build_tree(levels, branching)).h, static_cast<double>(ref.h), 1e-9)
          << levels << " levels, branching " << branching;
    }
}

TEST(Cohesion, LargerUnitsDriftTowardChaos) {
  // a wider span of control raises h for the same depth
  EXPECT_LT(cohesion(build_tree(3, 2)).h, cohesion(build_tree(3, 4)).h);
}

TEST(RejectionLadder, Steps) {
  const auto ladder = default_rejection_ladder();
  EXPECT_EQ(rank_from_rejection(0.95, ladder), 1);
  EXPECT_EQ(rank_from_rejection(0.8, ladder), 1);
  EXPECT_EQ(rank_from_rejection(0.79, ladder), 2);
  EXPECT_EQ(rank_from_rejection(0.45, ladder), 3);
  EXPECT_EQ(rank_from_rejection(0.2, ladder), 4);
  EXPECT_EQ(rank_from_rejection(0.0, ladder), 5);
  EXPECT_THROW(rank_from_rejection(1.1, ladder), domain_error);
  const std::vector<LadderStep> bad{{0.5, 1}, {0.6, 2}, {0.0, 3}};
  EXPECT_THROW(rank_from_rejection(0.5, bad), domain_error);
  const std::vector<LadderStep> open{{0.5, 1}, {0.1, 2}};
  EXPECT_THROW(rank_from_rejection(0.5, open), domain_error);
}
