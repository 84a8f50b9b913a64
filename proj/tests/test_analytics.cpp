#include <algorithm>
#include <numeric>

#include <gtest/gtest.h>

#include "oracle/dense_pagerank.hpp"
#include "oracle/partition_enum.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "udcim/analytics.hpp"
#include "udcim/errors.hpp"

using namespace udcim;

namespace {

std::vector<std::pair<std::size_t, std::size_t>> arc_pairs(const WeightedDigraph& g) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (const auto& a : g.arcs()) out.emplace_back(a.source, a.target);
    return out;
}

std::vector<std::vector<double>> projection(const WeightedDigraph& g) {
    std::vector<std::vector<double>> a(g.num_nodes(), std::vector<double>(g.num_nodes(), 0.0));
    for (const auto& arc : g.arcs()) {
        a[arc.source][arc.target] += arc.weight;
        a[arc.target][arc.source] += arc.weight;
    }
    return a;
}

std::vector<int> labels_of(const CommunityPartition& p) {
    return {p.assignment.begin(), p.assignment.end()};
}

} // namespace

TEST(PageRank, MutualPairIsUniform) {
    const auto g = WeightedDigraph::from_arcs(2, {{0, 1, 0.5}, {1, 0, 0.5}});
    const auto pr = pagerank(g);
    EXPECT_NEAR(pr.scores[0], 0.5, 1e-12);
    EXPECT_NEAR(pr.scores[1], 0.5, 1e-12);
}

TEST(PageRank, ChainMatchesDenseOracle) {
    const auto g = WeightedDigraph::from_arcs(3, {{0, 1, 0.5}, {1, 2, 0.5}});
    const auto pr = pagerank(g);
    const auto ref = oracle::dense_pagerank(3, arc_pairs(g), 0.85);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(pr.scores[i], ref[i], 1e-9);
    EXPECT_NEAR(std::accumulate(pr.scores.begin(), pr.scores.end(), 0.0), 1.0, 1e-9);
}

TEST(PageRank, EmptyGraphRejected) {
    EXPECT_THROW(pagerank(WeightedDigraph::from_arcs(0, {})), PreconditionError);
}

TEST(PageRank, OptionsValidated) {
    const auto g = fixtures::g3();
    EXPECT_THROW(pagerank(g, {1.0, 1e-9, 10}), DomainError);
    EXPECT_THROW(pagerank(g, {0.85, 0.0, 10}), DomainError);
}

TEST(PageRankProperty, RandomGraphsAgainstDenseOracle) {
    Rng rng(8);
    for (int trial = 0; trial < 200; ++trial) {
        const auto g = gen::random_graph(rng, {1, 25, 0.15, {}, false});
        const auto pr = pagerank(g);
        const auto ref = oracle::dense_pagerank(g.num_nodes(), arc_pairs(g), 0.85);
        double sum = 0.0;
        for (std::size_t i = 0; i < g.num_nodes(); ++i) {
            EXPECT_NEAR(pr.scores[i], ref[i], 1e-9);
            EXPECT_GT(pr.scores[i], 0.0);
            sum += pr.scores[i];
        }
        EXPECT_NEAR(sum, 1.0, 1e-9);
        const std::size_t head = std::min<std::size_t>(10, pr.residual_history.size());
        for (std::size_t i = 1; i < head; ++i) EXPECT_LE(pr.residual_history[i], pr.residual_history[i - 1] + 1e-15);
    }
}

TEST(Louvain, TwoTrianglesRecovered) {
    const auto g = fixtures::two_triangles();
    const auto p = louvain(g, 1);
    ASSERT_EQ(p.communities.size(), 2u);
    EXPECT_EQ(p.communities[0], (std::vector<NodeId>{0, 1, 2}));
    EXPECT_EQ(p.communities[1], (std::vector<NodeId>{3, 4, 5}));
    EXPECT_NEAR(p.modularity, 0.5, 1e-12);
    const auto best = oracle::best_partition(projection(g));
    EXPECT_NEAR(best.modularity, p.modularity, 1e-12);
    EXPECT_EQ(best.partitions, 203u);
}

TEST(Louvain, SingleNode) {
    const auto p = louvain(WeightedDigraph::from_arcs(1, {}), 3);
    ASSERT_EQ(p.communities.size(), 1u);
    EXPECT_DOUBLE_EQ(p.modularity, 0.0);
}

TEST(Louvain, DeterministicPerSeed) {
    Rng rng(12);
    const auto g = gen::random_graph(rng, {30, 30, 0.1, {}, false});
    EXPECT_EQ(louvain(g, 5).assignment, louvain(g, 5).assignment);
}

TEST(LouvainProperty, PartitionValidAndMonotone) {
    Rng rng(99);
    for (int trial = 0; trial < 150; ++trial) {
        const auto g = gen::random_graph(rng, {1, 40, 0.1, {}, false});
        const auto p = louvain(g, trial);
        ASSERT_EQ(p.assignment.size(), g.num_nodes());
        std::vector<int> seen(g.num_nodes(), 0);
        for (std::uint32_t c = 0; c < p.communities.size(); ++c) {
            ASSERT_FALSE(p.communities[c].empty());
            for (NodeId u : p.communities[c]) {
                EXPECT_EQ(p.assignment[u], c);
                ++seen[u];
            }
        }
        for (int s : seen) EXPECT_EQ(s, 1);
        ASSERT_FALSE(p.level_modularity.empty());
        for (std::size_t i = 1; i < p.level_modularity.size(); ++i)
            EXPECT_GE(p.level_modularity[i], p.level_modularity[i - 1] - 1e-12);
        EXPECT_NEAR(p.modularity, modularity(g, p), 1e-12);
        EXPECT_NEAR(p.modularity, oracle::dense_modularity(projection(g), labels_of(p)), 1e-9);
        std::vector<std::uint32_t> singletons(g.num_nodes());
        std::iota(singletons.begin(), singletons.end(), 0u);
        EXPECT_GE(p.modularity, modularity(g, make_partition(g, singletons)) - 1e-12);
    }
}

TEST(LouvainProperty, NearOptimalOnTinyGraphs) {
    Rng rng(123);
    for (int trial = 0; trial < 40; ++trial) {
        const auto g = gen::random_graph(rng, {2, 8, 0.3, {}, false});
        const auto p = louvain(g, trial);
        const auto best = oracle::best_partition(projection(g));
        EXPECT_LE(p.modularity, best.modularity + 1e-9);
    }
}

TEST(Modularity, FormulaCases) {
    const auto g = fixtures::two_triangles();
    EXPECT_NEAR(modularity(g, make_partition(g, {0, 0, 0, 0, 0, 0})), 0.0, 1e-12);
    const double truth = modularity(g, make_partition(g, {0, 0, 0, 1, 1, 1}));
    EXPECT_NEAR(truth, 0.5, 1e-12);
    Rng rng(4);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::uint32_t> labels(6);
        for (auto& l : labels) l = static_cast<std::uint32_t>(uniform_index(rng, 6));
        // Densify labels.
        std::vector<std::uint32_t> remap(6, 99);
        std::uint32_t next = 0;
        for (auto& l : labels) {
            if (remap[l] == 99) remap[l] = next++;
            l = remap[l];
        }
        const auto p = make_partition(g, labels);
        EXPECT_LE(modularity(g, p), truth + 1e-12);
        EXPECT_NEAR(modularity(g, p), oracle::dense_modularity(projection(g), labels_of(p)), 1e-12);
    }
}

TEST(Modularity, NonCoveringPartitionRejected) {
    const auto g = fixtures::two_triangles();
    CommunityPartition p = make_partition(g, {0, 0, 0, 1, 1, 1});
    p.communities[1].pop_back();
    EXPECT_THROW(modularity(g, p), PreconditionError);
    EXPECT_THROW(make_partition(g, {0, 0, 0}), PreconditionError);
}

TEST(RankByOutDegree, Examples) {
    const auto g = WeightedDigraph::from_arcs(
        6, {{0, 3, 0.1}, {0, 4, 0.1}, {0, 5, 0.1}, {1, 3, 0.1}, {2, 3, 0.1}, {2, 4, 0.1}, {2, 5, 0.1}});
    const std::vector<NodeId> nodes{0, 1, 2};
    EXPECT_EQ(rank_by_out_degree(g, nodes), (std::vector<NodeId>{0, 2, 1}));
    EXPECT_TRUE(rank_by_out_degree(g, {}).empty());
    const std::vector<NodeId> one{5};
    EXPECT_EQ(rank_by_out_degree(g, one), one);
}

TEST(RankByOutDegree, IsPermutation) {
    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const auto g = gen::random_graph(rng, {1, 20, 0.2, {}, false});
        auto nodes = gen::random_subset(rng, g.num_nodes(), uniform_index(rng, g.num_nodes() + 1));
        auto ranked = rank_by_out_degree(g, nodes);
        for (std::size_t i = 1; i < ranked.size(); ++i) EXPECT_GE(g.out_degree(ranked[i - 1]), g.out_degree(ranked[i]));
        std::sort(ranked.begin(), ranked.end());
        EXPECT_EQ(ranked, nodes);
    }
}
