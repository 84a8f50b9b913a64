#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "udcim/analytics.hpp"
#include "udcim/diffusion.hpp"
#include "udcim/errors.hpp"
#include "udcim/graph.hpp"

namespace udcim {

// Thrown when no vertex outside S_A can reach σ(S_A) inside its community.
class NoCandidatesError : public Error {
public:
    NoCandidatesError(std::size_t influenced, std::size_t touched_communities);

    std::size_t influenced() const { return influenced_; }
    std::size_t touched_communities() const { return touched_; }

private:
    std::size_t influenced_;
    std::size_t touched_;
};

// Reverse breadth-first search from `roots` over in-arcs, staying inside
// `community` and never entering a node of S_A. Returns every reached node,
// roots included, in dequeue order.
std::vector<NodeId> find_parents(const WeightedDigraph& graph, std::span<const NodeId> roots,
                                 const CommunityPartition& partition, std::uint32_t community,
                                 std::span<const NodeId> seeds_a);

struct LodbhResult {
    std::vector<NodeId> seeds_b;
    std::vector<NodeId> influenced_by_a;  // σ(S_A) with S_B = ∅
    std::vector<NodeId> candidates;       // P̂ after removing S_A, ranked
    std::size_t touched_communities = 0;
    bool short_set = false;               // fewer than k candidates were available
};

// Local out-degree heuristic: rank the in-community ancestors of σ(S_A) by
// out-degree and keep the first k.
LodbhResult get_seed_sb(const WeightedDigraph& graph, const Thresholds& thresholds,
                        std::span<const NodeId> seeds_a, std::size_t k, const CommunityPartition& partition);

} // namespace udcim
