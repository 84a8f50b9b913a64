#include "udcim/diffusion.hpp"

#include <algorithm>
#include <string>

#include "udcim/errors.hpp"

namespace udcim {

Thresholds::Thresholds(double theta1, double theta2) : theta1_(theta1), theta2_(theta2) {
    if (!(theta1 >= 0.0 && theta1 <= 1.0)) throw DomainError("theta1 = " + std::to_string(theta1) + " outside [0,1]");
    if (!(theta2 >= 0.0 && theta2 <= 1.0)) throw DomainError("theta2 = " + std::to_string(theta2) + " outside [0,1]");
}

IncomingInfluence incoming_influence(const WeightedDigraph& graph, const ActivationState& state, NodeId u) {
    IncomingInfluence in;
    for (const Neighbor& nb : graph.in_neighbors(u)) {
        const NodeStatus s = state[nb.node];
        if (s == NodeStatus::FinalA) {
            in.from_a += nb.weight;
        } else if (s == NodeStatus::FinalB) {
            in.from_b += nb.weight;
        }
    }
    return in;
}

bool is_temporarily_active(Tendency tendency, IncomingInfluence in, const Thresholds& thresholds) {
    switch (tendency) {
    case Tendency::A:
        return in.from_a >= thresholds.theta1() || in.from_b >= thresholds.opposing();
    case Tendency::B:
        return in.from_b >= thresholds.theta1() || in.from_a >= thresholds.opposing();
    case Tendency::Neutral:
        return in.from_a + in.from_b >= thresholds.theta1();
    }
    return false;
}

NodeStatus final_choice(Tendency tendency, IncomingInfluence in, const Thresholds& thresholds) {
    switch (tendency) {
    case Tendency::A:
        return in.from_b >= std::max(in.from_a, thresholds.opposing()) ? NodeStatus::FinalB : NodeStatus::FinalA;
    case Tendency::B:
        return in.from_a >= std::max(in.from_b, thresholds.opposing()) ? NodeStatus::FinalA : NodeStatus::FinalB;
    case Tendency::Neutral:
        // ties go to A
        return in.from_b > in.from_a ? NodeStatus::FinalB : NodeStatus::FinalA;
    }
    return NodeStatus::Inactive;
}

std::vector<NodeId> temporary_active(const WeightedDigraph& graph, const ActivationState& state,
                                     const Thresholds& thresholds) {
    std::vector<NodeId> out;
    for (NodeId u = 0; u < graph.num_nodes(); ++u) {
        if (state[u] != NodeStatus::Inactive) continue;
        if (is_temporarily_active(graph.tendency(u), incoming_influence(graph, state, u), thresholds)) out.push_back(u);
    }
    return out;
}

FinalizeOutcome finalize(const WeightedDigraph& graph, const ActivationState& state,
                         const Thresholds& thresholds, std::span<const NodeId> temporary) {
    FinalizeOutcome outcome{state, false};
    for (NodeId u : temporary) {
        if (u >= graph.num_nodes() || state[u] != NodeStatus::Inactive)
            throw PreconditionError("finalize: node " + std::to_string(u) + " is not an inactive node");
        outcome.state[u] = final_choice(graph.tendency(u), incoming_influence(graph, state, u), thresholds);
        outcome.changed = true;
    }
    return outcome;
}

namespace {

DiffusionResult summarize(ActivationState state, std::size_t rounds) {
    DiffusionResult r;
    r.rounds = rounds;
    for (NodeStatus s : state) {
        if (s == NodeStatus::FinalA) ++r.sigma_a;
        if (s == NodeStatus::FinalB) ++r.sigma_b;
    }
    r.final_state = std::move(state);
    return r;
}

} // namespace

DiffusionResult run_to_fixed_point(const WeightedDigraph& graph, const Thresholds& thresholds,
                                   ActivationState state, const RoundObserver& observer) {
    const std::size_t n = graph.num_nodes();
    if (state.size() != n) throw PreconditionError("state size does not match node count");
    if (!graph.weights_assigned()) throw PreconditionError("diffusion requires assigned arc weights");

    // A node's test result can only change after one of its in-neighbors
    // commits, so later rounds only revisit out-neighbors of fresh commits.
    std::vector<NodeId> candidates;
    for (NodeId u = 0; u < n; ++u) {
        if (state[u] == NodeStatus::Inactive) candidates.push_back(u);
    }
    std::vector<char> queued(n, 0);
    std::vector<NodeId> active;
    std::vector<NodeStatus> decided;

    std::size_t rounds = 0;
    while (rounds < n) {
        ++rounds;
        active.clear();
        for (NodeId u : candidates) {
            queued[u] = 0;
            if (state[u] != NodeStatus::Inactive) continue;
            if (is_temporarily_active(graph.tendency(u), incoming_influence(graph, state, u), thresholds))
                active.push_back(u);
        }
        if (active.empty()) {
            if (observer) observer(rounds, state);
            break;
        }
        decided.clear();
        for (NodeId u : active) decided.push_back(final_choice(graph.tendency(u), incoming_influence(graph, state, u), thresholds));
        candidates.clear();
        for (std::size_t i = 0; i < active.size(); ++i) {
            state[active[i]] = decided[i];
            for (const Neighbor& nb : graph.out_neighbors(active[i])) {
                if (state[nb.node] == NodeStatus::Inactive && !queued[nb.node]) {
                    queued[nb.node] = 1;
                    candidates.push_back(nb.node);
                }
            }
        }
        std::sort(candidates.begin(), candidates.end());
        if (observer) observer(rounds, state);
    }
    return summarize(std::move(state), rounds);
}

DiffusionResult diffuse(const WeightedDigraph& graph, const Thresholds& thresholds,
                        std::span<const NodeId> seeds_a, std::span<const NodeId> seeds_b,
                        const RoundObserver& observer) {
    const std::size_t n = graph.num_nodes();
    ActivationState state(n, NodeStatus::Inactive);
    for (NodeId u : seeds_a) {
        if (u >= n) throw PreconditionError("seed " + std::to_string(u) + " out of range");
        state[u] = NodeStatus::FinalA;
    }
    for (NodeId u : seeds_b) {
        if (u >= n) throw PreconditionError("seed " + std::to_string(u) + " out of range");
        if (state[u] == NodeStatus::FinalA)
            throw PreconditionError("node " + std::to_string(u) + " appears in both seed sets");
        state[u] = NodeStatus::FinalB;
    }
    return run_to_fixed_point(graph, thresholds, std::move(state), observer);
}

std::size_t sigma(const DiffusionResult& result, Side side) {
    return side == Side::A ? result.sigma_a : result.sigma_b;
}

std::vector<NodeId> influenced_set(const DiffusionResult& result, Side side) {
    const NodeStatus want = side == Side::A ? NodeStatus::FinalA : NodeStatus::FinalB;
    std::vector<NodeId> out;
    for (NodeId u = 0; u < result.final_state.size(); ++u) {
        if (result.final_state[u] == want) out.push_back(u);
    }
    return out;
}

} // namespace udcim
