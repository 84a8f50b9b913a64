#include "udcim/lodbh.hpp"

#include <algorithm>
#include <deque>

namespace udcim {

NoCandidatesError::NoCandidatesError(std::size_t influenced, std::size_t touched_communities)
    : Error("no reachable candidates: sigma(S_A) has " + std::to_string(influenced) + " nodes in " +
            std::to_string(touched_communities) + " communities, and no node outside S_A reaches them"),
      influenced_(influenced), touched_(touched_communities) {}

namespace {

void check_partition(const WeightedDigraph& graph, const CommunityPartition& partition) {
    if (partition.assignment.size() != graph.num_nodes())
        throw PreconditionError("partition does not cover every node");
}

// Shared by find_parents and get_seed_sb; `visited` persists across calls
// because communities are disjoint.
void reverse_bfs(const WeightedDigraph& graph, std::span<const NodeId> roots, const CommunityPartition& partition,
                 std::uint32_t community, const std::vector<char>& in_seeds_a, std::vector<char>& visited,
                 std::vector<NodeId>& out) {
    std::deque<NodeId> queue;
    for (NodeId u : roots) {
        if (visited[u]) continue;
        visited[u] = 1;
        queue.push_back(u);
    }
    while (!queue.empty()) {
        const NodeId u = queue.front();
        queue.pop_front();
        out.push_back(u);
        for (const Neighbor& nb : graph.in_neighbors(u)) {
            const NodeId v = nb.node;
            if (visited[v] || in_seeds_a[v] || partition.assignment[v] != community) continue;
            visited[v] = 1;
            queue.push_back(v);
        }
    }
}

std::vector<char> seed_mask(const WeightedDigraph& graph, std::span<const NodeId> seeds) {
    std::vector<char> mask(graph.num_nodes(), 0);
    for (NodeId u : seeds) {
        if (u >= graph.num_nodes()) throw PreconditionError("seed " + std::to_string(u) + " out of range");
        mask[u] = 1;
    }
    return mask;
}

} // namespace

std::vector<NodeId> find_parents(const WeightedDigraph& graph, std::span<const NodeId> roots,
                                 const CommunityPartition& partition, std::uint32_t community,
                                 std::span<const NodeId> seeds_a) {
    check_partition(graph, partition);
    for (NodeId u : roots) {
        if (u >= graph.num_nodes() || partition.assignment[u] != community)
            throw PreconditionError("find_parents: root " + std::to_string(u) + " is not in the community");
    }
    const auto in_seeds_a = seed_mask(graph, seeds_a);
    std::vector<char> visited(graph.num_nodes(), 0);
    std::vector<NodeId> out;
    reverse_bfs(graph, roots, partition, community, in_seeds_a, visited, out);
    return out;
}

LodbhResult get_seed_sb(const WeightedDigraph& graph, const Thresholds& thresholds,
                        std::span<const NodeId> seeds_a, std::size_t k, const CommunityPartition& partition) {
    if (seeds_a.empty()) throw PreconditionError("get_seed_sb needs a non-empty S_A");
    if (k == 0) throw PreconditionError("get_seed_sb needs k >= 1");
    check_partition(graph, partition);
    const auto in_seeds_a = seed_mask(graph, seeds_a);

    LodbhResult result;
    const DiffusionResult spread = diffuse(graph, thresholds, seeds_a, {});
    result.influenced_by_a = influenced_set(spread, Side::A);

    std::vector<std::vector<NodeId>> buckets(partition.communities.size());
    for (NodeId u : result.influenced_by_a) buckets[partition.assignment[u]].push_back(u);

    std::vector<char> visited(graph.num_nodes(), 0);
    std::vector<NodeId> pool;
    for (std::uint32_t c = 0; c < buckets.size(); ++c) {
        if (buckets[c].empty()) continue;
        ++result.touched_communities;
        reverse_bfs(graph, buckets[c], partition, c, in_seeds_a, visited, pool);
    }
    std::erase_if(pool, [&](NodeId u) { return in_seeds_a[u] != 0; });
    if (pool.empty()) throw NoCandidatesError(result.influenced_by_a.size(), result.touched_communities);

    result.candidates = rank_by_out_degree(graph, pool);
    const std::size_t take = std::min(k, result.candidates.size());
    result.seeds_b.assign(result.candidates.begin(), result.candidates.begin() + static_cast<std::ptrdiff_t>(take));
    result.short_set = take < k;
    return result;
}

} // namespace udcim
