#include <gtest/gtest.h>

#include "oracle/reference_diffusion.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "udcim/diffusion.hpp"
#include "udcim/errors.hpp"

using namespace udcim;

namespace {

const Thresholds kG3(0.5, 0.3);

ActivationState g3_state() {
    return {NodeStatus::FinalA, NodeStatus::FinalB, NodeStatus::Inactive};
}

} // namespace

TEST(Thresholds, RangeChecked) {
    EXPECT_THROW(Thresholds(-0.1, 0.2), DomainError);
    EXPECT_THROW(Thresholds(0.5, 1.2), DomainError);
    EXPECT_NO_THROW(Thresholds(0.0, 1.0));
    EXPECT_DOUBLE_EQ(Thresholds(0.5, 0.3).opposing(), 0.8);
}

TEST(TemporaryActive, G3NeutralUsesCombinedWeight) {
    EXPECT_EQ(temporary_active(fixtures::g3(), g3_state(), kG3), std::vector<NodeId>{2});
}

TEST(TemporaryActive, G4LeaningAUsesOwnSide) {
    const auto g = fixtures::g4();
    EXPECT_EQ(temporary_active(g, g3_state(), kG3), std::vector<NodeId>{2});
    const auto in = incoming_influence(g, g3_state(), 2);
    EXPECT_DOUBLE_EQ(in.from_a, 0.6);
    EXPECT_DOUBLE_EQ(in.from_b, 0.5);
}

TEST(TemporaryActive, NothingWithoutCommittedNodes) {
    const ActivationState empty(3, NodeStatus::Inactive);
    EXPECT_TRUE(temporary_active(fixtures::g3(), empty, kG3).empty());
}

TEST(TemporaryActive, FinalNodesNeverReturned) {
    const ActivationState all{NodeStatus::FinalA, NodeStatus::FinalB, NodeStatus::FinalA};
    EXPECT_TRUE(temporary_active(fixtures::g3(), all, kG3).empty());
}

TEST(TemporaryActive, OpposingThresholdRules) {
    const Thresholds thr(0.5, 0.3);
    EXPECT_TRUE(is_temporarily_active(Tendency::A, {0.5, 0.0}, thr));
    EXPECT_FALSE(is_temporarily_active(Tendency::A, {0.0, 0.7}, thr));
    EXPECT_TRUE(is_temporarily_active(Tendency::A, {0.0, 0.8}, thr));
    EXPECT_TRUE(is_temporarily_active(Tendency::B, {0.0, 0.5}, thr));
    EXPECT_FALSE(is_temporarily_active(Tendency::B, {0.7, 0.0}, thr));
    EXPECT_TRUE(is_temporarily_active(Tendency::B, {0.8, 0.0}, thr));
    EXPECT_TRUE(is_temporarily_active(Tendency::Neutral, {0.25, 0.25}, thr));
    EXPECT_FALSE(is_temporarily_active(Tendency::Neutral, {0.25, 0.125}, thr));
}

TEST(Finalize, G3NodeGoesToA) {
    const auto g = fixtures::g3();
    const std::vector<NodeId> temp{2};
    const auto out = finalize(g, g3_state(), kG3, temp);
    EXPECT_TRUE(out.changed);
    EXPECT_EQ(out.state[2], NodeStatus::FinalA);
}

TEST(Finalize, G3SwappedWeightsGoesToB) {
    const auto g = fixtures::g3(0.5, 0.6);
    const std::vector<NodeId> temp{2};
    EXPECT_EQ(finalize(g, g3_state(), kG3, temp).state[2], NodeStatus::FinalB);
}

TEST(Finalize, G4StrongOpposingSideWins) {
    const auto g = fixtures::g4(0.6, 0.9);
    const std::vector<NodeId> temp{2};
    EXPECT_EQ(finalize(g, g3_state(), kG3, temp).state[2], NodeStatus::FinalB);
    const auto weak = fixtures::g4(0.6, 0.5);
    EXPECT_EQ(finalize(weak, g3_state(), kG3, temp).state[2], NodeStatus::FinalA);
}

TEST(Finalize, TieRules) {
    const Thresholds thr(0.5, 0.3);
    EXPECT_EQ(final_choice(Tendency::Neutral, {0.5, 0.5}, thr), NodeStatus::FinalA);
    EXPECT_EQ(final_choice(Tendency::A, {0.9, 0.9}, thr), NodeStatus::FinalB);
    EXPECT_EQ(final_choice(Tendency::B, {0.9, 0.9}, thr), NodeStatus::FinalA);
    EXPECT_EQ(final_choice(Tendency::B, {0.7, 0.1}, thr), NodeStatus::FinalB);
}

TEST(Finalize, EmptySetChangesNothingAndFinalNodesRejected) {
    const auto g = fixtures::g3();
    EXPECT_FALSE(finalize(g, g3_state(), kG3, {}).changed);
    const std::vector<NodeId> bad{0};
    EXPECT_THROW(finalize(g, g3_state(), kG3, bad), PreconditionError);
}

TEST(Diffuse, G3) {
    const std::vector<NodeId> a{0}, b{1};
    const auto r = diffuse(fixtures::g3(), kG3, a, b);
    EXPECT_EQ(r.sigma_a, 2u);
    EXPECT_EQ(r.sigma_b, 1u);
    EXPECT_EQ(r.rounds, 2u);
    EXPECT_EQ(influenced_set(r, Side::A), (std::vector<NodeId>{0, 2}));
    EXPECT_EQ(influenced_set(r, Side::B), std::vector<NodeId>{1});
    EXPECT_EQ(sigma(r, Side::A), 2u);
}

TEST(Diffuse, EmptySeedsAndSaturation) {
    const auto g = fixtures::g3();
    const auto empty = diffuse(g, kG3, {}, {});
    EXPECT_EQ(empty.sigma_a, 0u);
    EXPECT_EQ(empty.sigma_b, 0u);
    EXPECT_EQ(empty.rounds, 1u);
    EXPECT_EQ(sigma(empty, Side::B), 0u);
    const std::vector<NodeId> all{0, 1, 2};
    const auto full = diffuse(g, kG3, all, {});
    EXPECT_EQ(full.sigma_a, 3u);
    EXPECT_EQ(full.sigma_b, 0u);
}

TEST(Diffuse, Preconditions) {
    const auto g = fixtures::g3();
    const std::vector<NodeId> a{0}, b{0}, far{7};
    EXPECT_THROW(diffuse(g, kG3, a, b), PreconditionError);
    EXPECT_THROW(diffuse(g, kG3, far, {}), PreconditionError);
    const auto unweighted = WeightedDigraph::from_arcs(2, {{0, 1, kUnassignedWeight}});
    EXPECT_THROW(diffuse(unweighted, kG3, a, {}), PreconditionError);
}

TEST(Diffuse, ChainNeedsOneRoundPerHop) {
    const auto g = WeightedDigraph::from_arcs(5, {{0, 1, 0.9}, {1, 2, 0.9}, {2, 3, 0.9}, {3, 4, 0.9}});
    const std::vector<NodeId> a{0};
    std::vector<std::size_t> committed;
    const auto r = diffuse(g, kG3, a, {}, [&](std::size_t, const ActivationState& s) {
        std::size_t c = 0;
        for (auto x : s) c += x != NodeStatus::Inactive;
        committed.push_back(c);
    });
    EXPECT_EQ(r.sigma_a, 5u);
    EXPECT_EQ(r.rounds, 5u);
    EXPECT_EQ(committed, (std::vector<std::size_t>{2, 3, 4, 5, 5}));
}

TEST(Diffuse, MatchesReferenceOnSampledInstances) {
    Rng rng(2024);
    for (int trial = 0; trial < 2000; ++trial) {
        const auto g = gen::random_graph(rng, {});
        const auto [a, b] = gen::random_seed_pair(rng, g.num_nodes(), 0.25, 0.25);
        const auto r = diffuse(g, kG3, a, b);
        const auto ref = oracle::reference_diffuse(gen::to_dense(g), 0.5, 0.3, gen::as_ints(a), gen::as_ints(b));
        ASSERT_EQ(gen::to_codes(r.final_state), ref.state) << "trial " << trial;
        EXPECT_EQ(r.rounds, ref.rounds);
    }
}

TEST(DiffuseProperty, InvariantsOnRandomGraphs) {
    Rng rng(77);
    gen::GraphSpec spec{1, 40, 0.08, {}, true};
    for (int trial = 0; trial < 300; ++trial) {
        const auto g = gen::random_graph(rng, spec);
        const Thresholds thr(0.2 + 0.6 * unit_uniform(rng), 0.5 * unit_uniform(rng));
        const auto [a, b] = gen::random_seed_pair(rng, g.num_nodes(), 0.1, 0.1);
        ActivationState prev(g.num_nodes(), NodeStatus::Inactive);
        for (NodeId u : a) prev[u] = NodeStatus::FinalA;
        for (NodeId u : b) prev[u] = NodeStatus::FinalB;
        const auto r = diffuse(g, thr, a, b, [&](std::size_t, const ActivationState& s) {
            for (std::size_t u = 0; u < s.size(); ++u) {
                if (prev[u] != NodeStatus::Inactive) {
                    ASSERT_EQ(s[u], prev[u]);
                }
            }
            prev = s;
        });
        EXPECT_LE(r.rounds, std::max<std::size_t>(g.num_nodes(), 1));
        EXPECT_LE(r.sigma_a + r.sigma_b, g.num_nodes());
        for (NodeId u : a) EXPECT_EQ(r.final_state[u], NodeStatus::FinalA);
        for (NodeId u : b) EXPECT_EQ(r.final_state[u], NodeStatus::FinalB);
        const auto again = run_to_fixed_point(g, thr, r.final_state);
        EXPECT_EQ(again.final_state, r.final_state);
        EXPECT_EQ(again.rounds, 1u);
    }
}
