#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <numeric>

#include <unistd.h>

#include "gossip/topology.hpp"
#include "oracles.hpp"

namespace gossip::topology {
namespace {

namespace fs = std::filesystem;

std::vector<std::size_t> degrees(const OverlayGraph& g) {
  std::vector<std::size_t> d;
  for (NodeId u = 0; u < g.node_count(); ++u) d.push_back(g.degree(u));
  return d;
}

TEST(ErdosRenyi, ExactEdgeCount) {
  for (std::uint64_t seed : {1, 2, 3}) {
    const auto g = generate_er(500, 1000, seed);
    EXPECT_EQ(g.node_count(), 500u);
    EXPECT_EQ(g.edge_count(), 1000u);
    const auto d = degrees(g);
    EXPECT_DOUBLE_EQ(std::accumulate(d.begin(), d.end(), 0.0) / 500.0, 4.0);
  }
}

TEST(ErdosRenyi, FullBudgetGivesCompleteGraph) {
  EXPECT_EQ(generate_er(4, 6, 99), testing::complete_graph(4));
  EXPECT_EQ(generate_er(2, 1, 5).edges(), (std::vector<Edge>{{0, 1}}));
  EXPECT_THROW(generate_er(4, 7, 1), ParameterError);
}

TEST(ErdosRenyi, DegreeHistogramNearPoisson) {
  // Loose sanity check over a few graphs, not a goodness-of-fit test.
  std::vector<double> hist(30, 0.0);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto g = generate_er(500, 1000, seed);
    for (auto d : degrees(g)) hist[std::min<std::size_t>(d, 29)] += 1.0 / 2500.0;
  }
  const auto pois = DegreeDistribution::poisson(4.0);
  for (std::size_t k = 0; k <= 8; ++k) EXPECT_NEAR(hist[k], pois.probability(k), 0.03) << k;
}

TEST(BarabasiAlbert, EdgeCountsFollowTheSeedClique) {
  // clique of m+1 nodes, then m edges per arrival
  EXPECT_EQ(generate_ba(500, 2, 1).edge_count(), 997u);
  EXPECT_EQ(generate_ba(500, 3, 1).edge_count(), 1494u);
  EXPECT_EQ(generate_ba(500, 4, 1).edge_count(), 1990u);
  const auto tree = generate_ba(3, 1, 4);
  EXPECT_EQ(tree.edge_count(), 2u);
  EXPECT_TRUE(is_connected(tree));
  EXPECT_THROW(generate_ba(2, 2, 1), ParameterError);
}

TEST(BarabasiAlbert, HasHubs) {
  int with_hub = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto g = generate_ba(500, 2, seed);
    const auto d = degrees(g);
    const double mean = 2.0 * static_cast<double>(g.edge_count()) / 500.0;
    if (static_cast<double>(*std::max_element(d.begin(), d.end())) > 3.0 * mean) ++with_hub;
  }
  EXPECT_GE(with_hub, 6);
}

TEST(WattsStrogatz, NoRewiringIsTheRingLattice) {
  EXPECT_EQ(generate_ws(6, 1, 0.0, 3), testing::cycle_graph(6));
  const auto g = generate_ws(20, 3, 0.0, 3);
  for (NodeId u = 0; u < 20; ++u) {
    EXPECT_EQ(g.degree(u), 6u);
    for (NodeId s = 1; s <= 3; ++s) EXPECT_TRUE(g.has_edge(u, (u + s) % 20));
  }
}

TEST(WattsStrogatz, RewiringKeepsEdgeBudget) {
  const auto g = generate_ws(500, 2, 0.1, 8);
  EXPECT_EQ(g.edge_count(), 1000u);
  EXPECT_NE(g, generate_ws(500, 2, 0.0, 8));
  EXPECT_LE(generate_ws(500, 2, 1.0, 8).edge_count(), 1000u);
  EXPECT_THROW(generate_ws(6, 3, 0.1, 1), ParameterError);
  EXPECT_THROW(generate_ws(10, 1, 1.5, 1), ParameterError);
}

TEST(KRegular, EveryDegreeIsK) {
  const auto g = generate_kregular(500, 4, 11);
  EXPECT_EQ(g.edge_count(), 1000u);
  for (auto d : degrees(g)) ASSERT_EQ(d, 4u);
  EXPECT_EQ(generate_kregular(4, 3, 2), testing::complete_graph(4));
  EXPECT_THROW(generate_kregular(5, 3, 1), ParameterError);
  EXPECT_THROW(generate_kregular(5, 5, 1), ParameterError);
}

TEST(Generators, SameSeedSameBytes) {
  for (const GeneratorSpec spec : {GeneratorSpec{GraphKind::kErdosRenyi, 300, 700, 0.0},
                                   GeneratorSpec{GraphKind::kBarabasiAlbert, 300, 3, 0.0},
                                   GeneratorSpec{GraphKind::kWattsStrogatz, 300, 3, 0.2},
                                   GeneratorSpec{GraphKind::kRegular, 300, 6, 0.0}}) {
    EXPECT_EQ(to_string(generate(spec, 77)), to_string(generate(spec, 77))) << to_string(spec.kind);
    EXPECT_NE(to_string(generate(spec, 77)), to_string(generate(spec, 78))) << to_string(spec.kind);
  }
}

TEST(Diameter, SmallCases) {
  EXPECT_EQ(diameter(testing::path_graph(4)), 3);
  EXPECT_EQ(diameter(testing::cycle_graph(6)), 3);
  EXPECT_EQ(diameter(OverlayGraph(1, std::vector<Edge>{})), 0);
  const std::vector<Edge> split{{0, 1}, {2, 3}};
  EXPECT_FALSE(diameter(OverlayGraph(4, split)).has_value());
  EXPECT_FALSE(is_connected(OverlayGraph(4, split)));
  EXPECT_EQ(bfs_distances(OverlayGraph(4, split), 0), (std::vector<int>{0, 1, -1, -1}));
}

TEST(Diameter, AgreesWithAllPairsOracle) {
  for (std::uint32_t seed = 1; seed <= 25; ++seed) {
    const auto g = testing::random_connected_graph(20 + seed * 3, seed * 2, seed);
    const auto d = testing::all_pairs_distances(g);
    int expected = 0;
    for (const auto& row : d) expected = std::max(expected, *std::max_element(row.begin(), row.end()));
    EXPECT_EQ(diameter(g), expected) << seed;
    EXPECT_EQ(bfs_distances(g, 0), d[0]);
  }
}

TEST(DegreeHistogram, SmallCases) {
  const auto reg = empirical_degree_distribution(generate_kregular(100, 4, 1));
  EXPECT_DOUBLE_EQ(reg.probability(4), 1.0);
  EXPECT_DOUBLE_EQ(reg.mean(), 4.0);
  EXPECT_DOUBLE_EQ(empirical_degree_distribution(testing::complete_graph(4)).probability(3), 1.0);
  const auto star = empirical_degree_distribution(testing::star_graph(4));
  EXPECT_DOUBLE_EQ(star.probability(1), 0.8);
  EXPECT_DOUBLE_EQ(star.probability(4), 0.2);
  EXPECT_DOUBLE_EQ(star.mean(), 1.6);
}

TEST(ConnectedGeneration, RejectsDisconnectedDraws) {
  // 500 nodes with mean degree 4 is usually disconnected, so attempts are rejected.
  const GeneratorSpec spec{GraphKind::kErdosRenyi, 500, 1000, 0.0};
  const auto gg = generate_connected(spec, 1);
  EXPECT_TRUE(is_connected(gg.graph));
  EXPECT_EQ(gg.seed, 1u);
  EXPECT_EQ(gg.diameter, diameter(gg.graph));
  if (gg.rejections == 0) {
    EXPECT_EQ(gg.used_seed, 1u);
  } else {
    EXPECT_NE(gg.used_seed, 1u);
    EXPECT_FALSE(is_connected(generate(spec, 1)));
  }
  EXPECT_EQ(generate(spec, gg.used_seed), gg.graph);
}

class CorpusTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("gossip-corpus-" + std::to_string(::getpid()) + "-" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST_F(CorpusTest, KRegularMembersHaveExactEdges) {
  const auto c = build_corpus({GraphKind::kRegular, 500, 4, 0.0}, 10, 3, "kr", 2);
  ASSERT_EQ(c.size(), 10u);
  for (std::size_t i = 0; i < c.size(); ++i) {
    EXPECT_EQ(c.graph(i).edge_count(), 1000u);
    EXPECT_EQ(c.members[i].seed, 3 + i);
  }
  int max_d = 0;
  for (const auto& m : c.members) max_d = std::max(max_d, m.diameter);
  EXPECT_EQ(c.max_diameter(), max_d);
}

TEST_F(CorpusTest, SingletonAndThreadIndependence) {
  const GeneratorSpec spec{GraphKind::kBarabasiAlbert, 200, 2, 0.0};
  const auto one = build_corpus(spec, 1, 9);
  EXPECT_EQ(one.max_diameter(), *diameter(one.graph(0)));
  const auto a = build_corpus(spec, 4, 9, "a", 1);
  const auto b = build_corpus(spec, 4, 9, "b", 3);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(a.graph(i), b.graph(i));
  EXPECT_THROW(build_corpus(spec, 0, 1), ParameterError);
}

TEST_F(CorpusTest, SaveLoadRoundTrip) {
  const auto c = build_corpus({GraphKind::kWattsStrogatz, 100, 2, 0.1}, 3, 5, "ws");
  save_corpus(c, dir_);
  EXPECT_TRUE(fs::exists(dir_ / "meta"));
  EXPECT_TRUE(fs::exists(dir_ / "graph-0.edges"));
  const auto back = load_corpus(dir_);
  EXPECT_EQ(back.name, "ws");
  EXPECT_EQ(back.spec, c.spec);
  EXPECT_EQ(back.base_seed, 5u);
  ASSERT_EQ(back.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(back.graph(i), c.graph(i));
    EXPECT_EQ(back.members[i].used_seed, c.members[i].used_seed);
    EXPECT_EQ(back.members[i].diameter, c.members[i].diameter);
  }
  EXPECT_THROW(save_corpus(c, dir_), ParameterError);
  EXPECT_NO_THROW(save_corpus(c, dir_, /*overwrite=*/true));
  EXPECT_THROW(load_corpus(dir_ / "missing"), FormatError);
}

}  // namespace
}  // namespace gossip::topology
