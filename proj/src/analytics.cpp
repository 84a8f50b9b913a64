#include "udcim/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>

#include "udcim/errors.hpp"
#include "udcim/random.hpp"

namespace udcim {

PageRankVector pagerank(const WeightedDigraph& graph, const PageRankOptions& options) {
    const std::size_t n = graph.num_nodes();
    if (n == 0) throw PreconditionError("pagerank on an empty graph");
    if (!(options.damping > 0.0 && options.damping < 1.0)) throw DomainError("damping must lie in (0,1)");
    if (!(options.tolerance > 0.0)) throw DomainError("tolerance must be positive");

    const double d = options.damping;
    const double inv_n = 1.0 / static_cast<double>(n);
    std::vector<double> x(n, inv_n), next(n);
    PageRankVector pr;
    pr.damping = d;

    while (pr.iterations < options.max_iterations) {
        double dangling = 0.0;
        for (NodeId u = 0; u < n; ++u) {
            if (graph.out_degree(u) == 0) dangling += x[u];
        }
        const double base = (1.0 - d) * inv_n + d * dangling * inv_n;
        for (NodeId v = 0; v < n; ++v) {
            double inflow = 0.0;
            for (const Neighbor& nb : graph.in_neighbors(v)) {
                inflow += x[nb.node] / static_cast<double>(graph.out_degree(nb.node));
            }
            next[v] = base + d * inflow;
        }
        double residual = 0.0;
        for (std::size_t i = 0; i < n; ++i) residual += std::abs(next[i] - x[i]);
        x.swap(next);
        ++pr.iterations;
        pr.residual = residual;
        pr.residual_history.push_back(residual);
        if (residual < options.tolerance) break;
    }
    const double total = std::accumulate(x.begin(), x.end(), 0.0);
    for (double& s : x) s /= total;
    pr.scores = std::move(x);
    return pr;
}

namespace {

// Symmetric weighted graph used by Louvain levels. `self` holds A_ii.
struct UndirectedGraph {
    std::vector<std::vector<std::pair<std::uint32_t, double>>> adj;
    std::vector<double> self;
    std::vector<double> degree;  // k_i = sum_j A_ij, self-loop included
    double total = 0.0;          // 2m = sum_i k_i
};

double arc_weight(const Arc& a) { return std::isnan(a.weight) ? 1.0 : a.weight; }

UndirectedGraph project(const WeightedDigraph& graph) {
    const std::size_t n = graph.num_nodes();
    UndirectedGraph g;
    g.adj.resize(n);
    g.self.assign(n, 0.0);
    g.degree.assign(n, 0.0);
    std::vector<std::unordered_map<std::uint32_t, double>> acc(n);
    for (const Arc& a : graph.arcs()) {
        const double w = arc_weight(a);
        acc[a.source][a.target] += w;
        acc[a.target][a.source] += w;
    }
    for (std::size_t u = 0; u < n; ++u) {
        g.adj[u].assign(acc[u].begin(), acc[u].end());
        std::sort(g.adj[u].begin(), g.adj[u].end());
        for (auto [v, w] : g.adj[u]) g.degree[u] += w;
        g.total += g.degree[u];
    }
    return g;
}

UndirectedGraph aggregate(const UndirectedGraph& g, const std::vector<std::uint32_t>& comm, std::size_t communities) {
    UndirectedGraph h;
    h.adj.resize(communities);
    h.self.assign(communities, 0.0);
    h.degree.assign(communities, 0.0);
    std::vector<std::unordered_map<std::uint32_t, double>> acc(communities);
    for (std::size_t u = 0; u < g.adj.size(); ++u) {
        const std::uint32_t cu = comm[u];
        h.self[cu] += g.self[u];
        for (auto [v, w] : g.adj[u]) {
            const std::uint32_t cv = comm[v];
            if (cu == cv) {
                h.self[cu] += w;
            } else {
                acc[cu][cv] += w;
            }
        }
    }
    for (std::size_t c = 0; c < communities; ++c) {
        h.adj[c].assign(acc[c].begin(), acc[c].end());
        std::sort(h.adj[c].begin(), h.adj[c].end());
        h.degree[c] = h.self[c];
        for (auto [v, w] : h.adj[c]) h.degree[c] += w;
        h.total += h.degree[c];
    }
    return h;
}

double modularity_of(const UndirectedGraph& g, const std::vector<std::uint32_t>& comm, std::size_t communities) {
    if (g.total <= 0.0) return 0.0;
    std::vector<double> inside(communities, 0.0), tot(communities, 0.0);
    for (std::size_t u = 0; u < g.adj.size(); ++u) {
        tot[comm[u]] += g.degree[u];
        inside[comm[u]] += g.self[u];
        for (auto [v, w] : g.adj[u]) {
            if (comm[v] == comm[u]) inside[comm[u]] += w;
        }
    }
    double q = 0.0;
    for (std::size_t c = 0; c < communities; ++c) {
        const double frac = tot[c] / g.total;
        q += inside[c] / g.total - frac * frac;
    }
    return q;
}

// One round of local moving until no node changes community. Returns true if any node moved.
bool local_moving(const UndirectedGraph& g, std::vector<std::uint32_t>& comm, Rng& rng) {
    const std::size_t n = g.adj.size();
    constexpr double kEps = 1e-12;
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    shuffle(std::span<std::uint32_t>(order), rng);

    std::vector<double> tot(g.degree);
    std::vector<double> link(n, 0.0);
    std::vector<char> seen(n, 0);
    std::vector<std::uint32_t> touched;
    bool any_move = false;

    for (int pass = 0; pass < 1000; ++pass) {
        bool moved = false;
        for (std::uint32_t i : order) {
            const std::uint32_t own = comm[i];
            const double ki = g.degree[i];
            touched.clear();
            touched.push_back(own);
            seen[own] = 1;
            for (auto [j, w] : g.adj[i]) {
                const std::uint32_t c = comm[j];
                if (!seen[c]) {
                    seen[c] = 1;
                    touched.push_back(c);
                }
                link[c] += w;
            }
            tot[own] -= ki;
            std::uint32_t best = own;
            double best_gain = link[own] - tot[own] * ki / g.total;
            for (std::uint32_t c : touched) {
                if (c == own) continue;
                const double gain = link[c] - tot[c] * ki / g.total;
                if (gain > best_gain + kEps || (gain >= best_gain - kEps && best != own && c < best)) {
                    best = c;
                    best_gain = gain;
                }
            }
            tot[best] += ki;
            for (std::uint32_t c : touched) {
                link[c] = 0.0;
                seen[c] = 0;
            }
            if (best != own) {
                comm[i] = best;
                moved = true;
                any_move = true;
            }
        }
        if (!moved) break;
    }
    return any_move;
}

std::size_t renumber(std::vector<std::uint32_t>& comm) {
    std::unordered_map<std::uint32_t, std::uint32_t> ids;
    for (auto& c : comm) {
        auto [it, inserted] = ids.emplace(c, static_cast<std::uint32_t>(ids.size()));
        c = it->second;
    }
    return ids.size();
}

} // namespace

CommunityPartition make_partition(const WeightedDigraph& graph, std::vector<std::uint32_t> assignment) {
    if (assignment.size() != graph.num_nodes()) throw PreconditionError("partition does not cover every node");
    CommunityPartition p;
    const std::size_t count = assignment.empty() ? 0 : *std::max_element(assignment.begin(), assignment.end()) + 1;
    p.communities.resize(count);
    for (NodeId u = 0; u < assignment.size(); ++u) p.communities[assignment[u]].push_back(u);
    for (const auto& members : p.communities) {
        if (members.empty()) throw PreconditionError("community ids must be dense");
    }
    p.assignment = std::move(assignment);
    p.modularity = modularity(graph, p);
    return p;
}

double modularity(const WeightedDigraph& graph, const CommunityPartition& partition) {
    const std::size_t n = graph.num_nodes();
    if (partition.assignment.size() != n) throw PreconditionError("partition does not cover every node");
    std::size_t listed = 0;
    for (std::size_t c = 0; c < partition.communities.size(); ++c) {
        for (NodeId u : partition.communities[c]) {
            if (u >= n || partition.assignment[u] != c)
                throw PreconditionError("partition member lists disagree with the assignment");
            ++listed;
        }
    }
    if (listed != n) throw PreconditionError("partition member lists do not cover every node exactly once");
    return modularity_of(project(graph), partition.assignment, partition.communities.size());
}

CommunityPartition louvain(const WeightedDigraph& graph, std::uint64_t rng_seed) {
    const std::size_t n = graph.num_nodes();
    Rng rng(rng_seed);
    UndirectedGraph level = project(graph);
    std::vector<std::uint32_t> node_comm(n);
    std::iota(node_comm.begin(), node_comm.end(), 0u);

    std::vector<double> trace{modularity_of(level, node_comm, n)};
    if (level.total > 0.0) {
        for (;;) {
            std::vector<std::uint32_t> comm(level.adj.size());
            std::iota(comm.begin(), comm.end(), 0u);
            if (!local_moving(level, comm, rng)) break;
            const std::size_t count = renumber(comm);
            for (auto& c : node_comm) c = comm[c];
            level = aggregate(level, comm, count);
            std::vector<std::uint32_t> singletons(count);
            std::iota(singletons.begin(), singletons.end(), 0u);
            trace.push_back(modularity_of(level, singletons, count));
            if (count == comm.size()) break;
        }
    }

    // Number communities by smallest member.
    std::vector<std::uint32_t> canonical(n);
    std::unordered_map<std::uint32_t, std::uint32_t> ids;
    for (NodeId u = 0; u < n; ++u) {
        auto [it, inserted] = ids.emplace(node_comm[u], static_cast<std::uint32_t>(ids.size()));
        canonical[u] = it->second;
    }
    CommunityPartition p = make_partition(graph, std::move(canonical));
    p.level_modularity = std::move(trace);
    return p;
}

std::vector<NodeId> rank_by_out_degree(const WeightedDigraph& graph, std::span<const NodeId> nodes) {
    std::vector<NodeId> out(nodes.begin(), nodes.end());
    for (NodeId u : out) {
        if (u >= graph.num_nodes()) throw PreconditionError("node " + std::to_string(u) + " out of range");
    }
    std::stable_sort(out.begin(), out.end(), [&](NodeId a, NodeId b) {
        const auto da = graph.out_degree(a), db = graph.out_degree(b);
        return da != db ? da > db : a < b;
    });
    return out;
}

} // namespace udcim
