#include <gtest/gtest.h>

#include <random>
#include <set>

#include "duplex/graph.hpp"
#include "oracles.hpp"

using namespace duplex;

TEST(DirectedLayer, RejectsOutOfRangeEndpoint) {
  EXPECT_THROW(DirectedLayer(3, {{0, 3}}), std::out_of_range);
}

TEST(DirectedLayer, CollapsesDuplicatesAndCountsThem) {
  DirectedLayer l(3, {{0, 1}, {0, 1}, {2, 2}, {0, 1}});
  EXPECT_EQ(l.edge_count(), 2u);
  EXPECT_EQ(l.duplicates_collapsed(), 2u);
  EXPECT_TRUE(l.has_edge(2, 2));
  ASSERT_EQ(l.out_neighbors(0).size(), 1u);
  EXPECT_EQ(l.in_neighbors(1)[0], 0u);
}

TEST(DirectedLayer, AdjacencyMatchesEdgeList) {
  std::mt19937_64 rng(11);
  auto l = oracle::random_layer(9, 0.3, rng, true);
  std::size_t out_total = 0, in_total = 0;
  for (NodeId v = 0; v < 9; ++v) {
    for (NodeId w : l.out_neighbors(v)) EXPECT_TRUE(l.has_edge(v, w));
    for (NodeId u : l.in_neighbors(v)) EXPECT_TRUE(l.has_edge(u, v));
    out_total += l.out_neighbors(v).size();
    in_total += l.in_neighbors(v).size();
  }
  EXPECT_EQ(out_total, l.edge_count());
  EXPECT_EQ(in_total, l.edge_count());
}

TEST(BuildBipartite, MapsEachEdge) {
  auto b = build_bipartite(DirectedLayer(3, {{1, 2}, {0, 1}}));
  std::vector<BipartiteEdge> want{{0, 1}, {1, 2}};
  EXPECT_EQ(b.edges(), want);
}

TEST(BuildBipartite, EmptyLayer) {
  auto b = build_bipartite(DirectedLayer(4, {}));
  EXPECT_EQ(b.node_count(), 4u);
  EXPECT_EQ(b.edge_count(), 0u);
}

TEST(BuildBipartite, SelfLoop) {
  auto b = build_bipartite(DirectedLayer(3, {{2, 2}}));
  EXPECT_TRUE(b.has_edge(2, 2));
}

TEST(MaxMatching, PathOfTwoEdges) {
  auto b = build_bipartite(DirectedLayer(3, {{0, 1}, {1, 2}}));
  auto m = max_matching(b);
  EXPECT_EQ(m.size(), 2u);
  EXPECT_EQ(driver_set(m, 3).members, std::vector<NodeId>{0});
}

TEST(MaxMatching, EmptyGraph) {
  EXPECT_EQ(max_matching(build_bipartite(DirectedLayer(5, {}))).size(), 0u);
}

TEST(MaxMatching, AllSelfLoopsArePerfect) {
  std::vector<Edge> loops;
  for (NodeId i = 0; i < 6; ++i) loops.push_back({i, i});
  auto m = max_matching(build_bipartite(DirectedLayer(6, loops)));
  EXPECT_EQ(m.size(), 6u);
  EXPECT_TRUE(driver_set(m, 6).members.empty());
}

TEST(MaxMatching, MatchesBruteForceOnSmallGraphs) {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 250; ++t) {
    std::size_t n = 1 + rng() % 8;
    double p = 0.05 + 0.1 * static_cast<double>(rng() % 5);
    auto b = build_bipartite(oracle::random_layer(n, p, rng, true));
    auto m = max_matching(b);
    ASSERT_TRUE(m.is_valid_for(b));
    ASSERT_EQ(m.size(), oracle::max_matching_size(b)) << "trial " << t;
    ASSERT_FALSE(oracle::has_augmenting_path(b, m));
    ASSERT_EQ(driver_set(m, n).size() + m.size(), n);
  }
}

TEST(MaxMatching, SizeIsSeedInvariant) {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 20; ++t) {
    std::size_t n = 10 + rng() % 41;
    auto b = build_bipartite(oracle::random_layer(n, 2.0 / static_cast<double>(n), rng));
    const std::size_t want = max_matching(b).size();
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
      auto m = max_matching(b, seed);
      ASSERT_EQ(m.size(), want);
      ASSERT_TRUE(m.is_valid_for(b));
      ASSERT_FALSE(oracle::has_augmenting_path(b, m));
    }
  }
}

TEST(MaxMatching, SeedsReachDifferentMatchings) {
  // A 4-cycle of choices: two perfect matchings exist.
  auto b = build_bipartite(DirectedLayer(2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
  std::set<std::vector<BipartiteEdge>> seen;
  for (std::uint64_t s = 0; s < 32; ++s) seen.insert(max_matching(b, s).pairs());
  EXPECT_EQ(seen.size(), 2u);
}

TEST(MaxMatching, UnseededIsDeterministic) {
  std::mt19937_64 rng(5);
  auto b = build_bipartite(oracle::random_layer(40, 0.05, rng));
  EXPECT_EQ(max_matching(b), max_matching(b));
  EXPECT_EQ(max_matching(b, 7), max_matching(b, 7));
}

TEST(DriverSet, Examples) {
  EXPECT_EQ(driver_set(Matching(3), 3).members, (std::vector<NodeId>{0, 1, 2}));
  Matching m(3);
  m.add({0, 1});
  m.add({1, 2});
  EXPECT_EQ(driver_set(m, 3).members, std::vector<NodeId>{0});
  Matching p(4);
  for (NodeId i = 0; i < 4; ++i) p.add({i, (i + 1) % 4});
  EXPECT_TRUE(driver_set(p, 4).members.empty());
}

TEST(Matching, AddRemoveKeepMatesInverse) {
  Matching m(3);
  m.add({0, 2});
  EXPECT_THROW(m.add({0, 1}), std::logic_error);
  EXPECT_THROW(m.add({1, 2}), std::logic_error);
  EXPECT_THROW(m.remove({1, 1}), std::logic_error);
  EXPECT_EQ(m.mate_of_minus(2), 0u);
  m.remove({0, 2});
  EXPECT_EQ(m.size(), 0u);
  EXPECT_FALSE(m.plus_matched(0));
}
