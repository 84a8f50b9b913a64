#include "udcim/exact.hpp"

#include <algorithm>
#include <limits>

#include "udcim/errors.hpp"

namespace udcim {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 acc = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        acc = acc * (n - k + i) / i;
        if (acc > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(acc);
}

BruteForceResult brute_force(const WeightedDigraph& graph, const Thresholds& thresholds,
                             std::span<const NodeId> seeds_a, std::size_t k, const BruteForceOptions& options) {
    const std::size_t n = graph.num_nodes();
    std::vector<char> in_a(n, 0);
    for (NodeId u : seeds_a) {
        if (u >= n) throw PreconditionError("seed " + std::to_string(u) + " out of range");
        in_a[u] = 1;
    }
    std::vector<NodeId> pool;
    for (NodeId u = 0; u < n; ++u) {
        if (!in_a[u]) pool.push_back(u);
    }
    if (k == 0 || k > pool.size())
        throw PreconditionError("brute_force needs 1 <= k <= |V \\ S_A| (k = " + std::to_string(k) + ")");
    const std::uint64_t total = binomial(pool.size(), k);
    if (total > options.combination_cap)
        throw CapExceededError("brute_force: C(" + std::to_string(pool.size()) + ", " + std::to_string(k) + ") = " +
                                   std::to_string(total) + " combinations exceed the cap of " +
                                   std::to_string(options.combination_cap),
                               total, options.combination_cap);

    // Lexicographic enumeration of index combinations; only strict
    // improvements replace the incumbent, so ties keep the smallest subset.
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    std::vector<NodeId> subset(k);
    BruteForceResult best;
    bool have = false;
    for (;;) {
        for (std::size_t i = 0; i < k; ++i) subset[i] = pool[idx[i]];
        const DiffusionResult r = diffuse(graph, thresholds, seeds_a, subset);
        const double value = options.objective == BruteForceObjective::SigmaB
                                 ? static_cast<double>(r.sigma_b)
                                 : static_cast<double>(r.sigma_b) - static_cast<double>(r.sigma_a);
        ++best.evaluated;
        if (!have || value > best.objective) {
            have = true;
            best.seeds_b = subset;
            best.sigma_a = r.sigma_a;
            best.sigma_b = r.sigma_b;
            best.objective = value;
        }
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == pool.size() - k + (i - 1)) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return best;
}

} // namespace udcim
