#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "udcim/graph.hpp"

namespace udcim {

// Per-node diffusion status. A node's tendency lives in the graph; Inactive
// nodes are the "tend ∈ {0,1,2}" states, FinalA / FinalB the committed ones.
enum class NodeStatus : std::uint8_t { Inactive, FinalA, FinalB };

using ActivationState = std::vector<NodeStatus>;

enum class Side { A, B };

class Thresholds {
public:
    // Throws DomainError unless both values lie in [0,1].
    Thresholds(double theta1, double theta2);

    double theta1() const { return theta1_; }
    double theta2() const { return theta2_; }
    // Threshold for influence arriving from the side a node does not lean to.
    double opposing() const { return theta1_ + theta2_; }

private:
    double theta1_;
    double theta2_;
};

struct DiffusionResult {
    ActivationState final_state;
    std::size_t sigma_a = 0;  // FinalA count, seeds included
    std::size_t sigma_b = 0;  // FinalB count, seeds included
    std::size_t rounds = 0;
};

// Incoming weight from committed in-neighbors of u.
struct IncomingInfluence {
    double from_a = 0.0;
    double from_b = 0.0;
};

IncomingInfluence incoming_influence(const WeightedDigraph& graph, const ActivationState& state, NodeId u);

// True when an inactive node u passes its tendency's temporary-activation test.
bool is_temporarily_active(Tendency tendency, IncomingInfluence in, const Thresholds& thresholds);

// Side an activated node commits to.
NodeStatus final_choice(Tendency tendency, IncomingInfluence in, const Thresholds& thresholds);

// All inactive nodes passing their temporary-activation test, ascending.
std::vector<NodeId> temporary_active(const WeightedDigraph& graph, const ActivationState& state,
                                     const Thresholds& thresholds);

struct FinalizeOutcome {
    ActivationState state;
    bool changed = false;
};

// Commits every node of `temporary` against the influence present in `state`
// (synchronous update). Throws PreconditionError if a node is already final.
FinalizeOutcome finalize(const WeightedDigraph& graph, const ActivationState& state,
                         const Thresholds& thresholds, std::span<const NodeId> temporary);

// Called after each round with the round number (1-based) and the state at its end.
using RoundObserver = std::function<void(std::size_t, const ActivationState&)>;

// Runs rounds from `initial` until a round activates nothing. At most n rounds
// are executed; the cap never alters the fixed point reached.
DiffusionResult run_to_fixed_point(const WeightedDigraph& graph, const Thresholds& thresholds,
                                   ActivationState initial, const RoundObserver& observer = {});

// Seeds S_A as FinalA and S_B as FinalB, then runs to the fixed point.
// Throws PreconditionError on overlapping seeds, out-of-range ids or
// unassigned weights.
DiffusionResult diffuse(const WeightedDigraph& graph, const Thresholds& thresholds,
                        std::span<const NodeId> seeds_a, std::span<const NodeId> seeds_b,
                        const RoundObserver& observer = {});

std::size_t sigma(const DiffusionResult& result, Side side);

// Members of the given side in the final state, ascending.
std::vector<NodeId> influenced_set(const DiffusionResult& result, Side side);

} // namespace udcim
