#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "udcim/graph.hpp"

namespace udcim {

struct PageRankOptions {
    double damping = 0.85;
    double tolerance = 1e-9;
    std::size_t max_iterations = 200;
};

struct PageRankVector {
    std::vector<double> scores;
    double damping = 0.85;
    std::size_t iterations = 0;
    double residual = 0.0;
    std::vector<double> residual_history;  // L1 change per iteration
};

// Power iteration over the unweighted out-link transition matrix; dangling
// nodes spread their mass uniformly. Stops when the L1 change drops below
// the tolerance or after max_iterations.
PageRankVector pagerank(const WeightedDigraph& graph, const PageRankOptions& options = {});

struct CommunityPartition {
    std::vector<std::uint32_t> assignment;          // node -> community
    std::vector<std::vector<NodeId>> communities;   // members, ascending
    double modularity = 0.0;
    std::vector<double> level_modularity;           // after each Louvain level, starting with singletons
};

// Builds a partition from an assignment vector. Community ids are kept as given
// and must be dense. Modularity is evaluated against `graph`.
CommunityPartition make_partition(const WeightedDigraph& graph, std::vector<std::uint32_t> assignment);

// Newman modularity on the undirected projection (antiparallel arc weights
// summed). Throws PreconditionError if the partition does not cover V
// consistently. A graph without weight has modularity 0. Unassigned arc
// weights count as 1 here and in louvain().
double modularity(const WeightedDigraph& graph, const CommunityPartition& partition);

// Louvain (local moving + aggregation) on the undirected projection. The node
// visit order of every level is shuffled with a generator seeded by rng_seed.
// Communities are numbered by their smallest member.
CommunityPartition louvain(const WeightedDigraph& graph, std::uint64_t rng_seed);

// Descending out-degree (arc count); ties by ascending id.
std::vector<NodeId> rank_by_out_degree(const WeightedDigraph& graph, std::span<const NodeId> nodes);

} // namespace udcim
