#include "udcim/synthetic.hpp"

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "udcim/errors.hpp"
#include "udcim/random.hpp"

namespace udcim {

WeightedDigraph planted_partition(const PlantedPartitionSpec& spec) {
    if (spec.communities == 0 || spec.nodes < 2 * spec.communities)
        throw PreconditionError("planted partition needs at least two nodes per community");
    if (!(spec.intra_fraction >= 0.0 && spec.intra_fraction <= 1.0))
        throw DomainError("intra_fraction outside [0,1]");
    const std::size_t n = spec.nodes;
    const std::size_t block = n / spec.communities;
    const auto block_of = [&](std::size_t u) { return std::min(u / block, spec.communities - 1); };
    const auto block_begin = [&](std::size_t c) { return c * block; };
    const auto block_end = [&](std::size_t c) { return c + 1 == spec.communities ? n : (c + 1) * block; };

    const std::size_t max_pairs = n * (n - 1) / 2;
    if (spec.undirected_edges > max_pairs / 2) throw PreconditionError("too many edges requested for planted partition");

    Rng rng(spec.seed);
    std::set<std::pair<NodeId, NodeId>> pairs;
    while (pairs.size() < spec.undirected_edges) {
        const auto u = static_cast<NodeId>(uniform_index(rng, n));
        NodeId v;
        if (spec.communities == 1 || unit_uniform(rng) < spec.intra_fraction) {
            const std::size_t c = block_of(u);
            v = static_cast<NodeId>(block_begin(c) + uniform_index(rng, block_end(c) - block_begin(c)));
        } else {
            // Uniform over nodes outside u's block.
            const std::size_t c = block_of(u);
            const std::size_t outside = n - (block_end(c) - block_begin(c));
            std::size_t pick = uniform_index(rng, outside);
            if (pick >= block_begin(c)) pick += block_end(c) - block_begin(c);
            v = static_cast<NodeId>(pick);
        }
        if (u == v) continue;
        pairs.emplace(std::min(u, v), std::max(u, v));
    }

    std::vector<Arc> arcs;
    arcs.reserve(2 * pairs.size());
    for (auto [u, v] : pairs) {
        arcs.push_back({u, v, kUnassignedWeight});
        arcs.push_back({v, u, kUnassignedWeight});
    }
    return WeightedDigraph::from_arcs(n, std::move(arcs));
}

} // namespace udcim
