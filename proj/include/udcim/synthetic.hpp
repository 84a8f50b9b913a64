#pragma once

#include <cstddef>
#include <cstdint>

#include "udcim/graph.hpp"

namespace udcim {

// Planted-partition benchmark graph: `nodes` split into `communities` equal
// blocks, `undirected_edges` distinct pairs of which a fraction
// `intra_fraction` fall inside a block. Every pair becomes two arcs.
// Weights are left unassigned; tendencies are Neutral.
struct PlantedPartitionSpec {
    std::size_t nodes = 600;
    std::size_t undirected_edges = 2300;
    std::size_t communities = 2;
    double intra_fraction = 0.9;
    std::uint64_t seed = 1;
};

WeightedDigraph planted_partition(const PlantedPartitionSpec& spec);

} // namespace udcim
