#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace udcim {

using NodeId = std::uint32_t;

// Prior leaning of a node. Numeric values match the tendency file codes.
enum class Tendency : std::uint8_t { Neutral = 0, A = 1, B = 2 };

std::string_view to_string(Tendency t);

// Weight value of an arc whose weight has not been assigned yet.
inline constexpr double kUnassignedWeight = std::numeric_limits<double>::quiet_NaN();

struct Arc {
    NodeId source;
    NodeId target;
    double weight;
};

struct Neighbor {
    NodeId node;
    double weight;
};

enum class Directedness { AsDirected, Symmetrize };

struct IngestStats {
    std::size_t duplicates_merged = 0;
    std::size_t self_loops_dropped = 0;
};

/**
 * Immutable weighted digraph with per-node tendencies.
 *
 * Node ids are dense (0..n-1). Arcs are kept sorted by (source, target),
 * duplicates merged by maximum weight and self-loops dropped. Both
 * adjacency directions are stored as CSR arrays.
 */
class WeightedDigraph {
public:
    WeightedDigraph() = default;

    // Builds a graph over n nodes. Empty `labels` defaults to decimal ids,
    // empty `tendencies` to all Neutral. Throws DomainError on weights
    // outside [0,1] and PreconditionError on out-of-range endpoints.
    static WeightedDigraph from_arcs(std::size_t n, std::vector<Arc> arcs,
                                     std::vector<Tendency> tendencies = {},
                                     std::vector<std::string> labels = {});

    std::size_t num_nodes() const { return tendencies_.size(); }
    std::size_t num_arcs() const { return arcs_.size(); }

    std::span<const Arc> arcs() const { return arcs_; }
    std::span<const Neighbor> out_neighbors(NodeId u) const {
        return {out_list_.data() + out_offsets_[u], out_list_.data() + out_offsets_[u + 1]};
    }
    std::span<const Neighbor> in_neighbors(NodeId u) const {
        return {in_list_.data() + in_offsets_[u], in_list_.data() + in_offsets_[u + 1]};
    }
    std::size_t out_degree(NodeId u) const { return out_offsets_[u + 1] - out_offsets_[u]; }
    std::size_t in_degree(NodeId u) const { return in_offsets_[u + 1] - in_offsets_[u]; }

    Tendency tendency(NodeId u) const { return tendencies_[u]; }
    std::span<const Tendency> tendencies() const { return tendencies_; }

    const std::string& label(NodeId u) const { return labels_[u]; }
    std::span<const std::string> labels() const { return labels_; }
    std::optional<NodeId> find(std::string_view label) const;

    // True when no arc carries kUnassignedWeight.
    bool weights_assigned() const { return weights_assigned_; }
    const IngestStats& ingest_stats() const { return stats_; }

    // Copy with arc weights replaced; `weights` is indexed like arcs().
    WeightedDigraph with_weights(std::span<const double> weights) const;
    WeightedDigraph with_tendencies(std::vector<Tendency> tendencies) const;

private:
    void build_adjacency();

    std::vector<Arc> arcs_;
    std::vector<std::size_t> out_offsets_{0};
    std::vector<Neighbor> out_list_;
    std::vector<std::size_t> in_offsets_{0};
    std::vector<Neighbor> in_list_;
    std::vector<Tendency> tendencies_;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, NodeId> index_;
    bool weights_assigned_ = true;
    IngestStats stats_;
};

// Reads "u v" / "u v w" lines; '#' and '%' start comment lines. Labels are
// arbitrary tokens remapped to dense ids in order of first appearance.
WeightedDigraph parse_edge_list(std::istream& in, Directedness directedness);

struct WeightPolicy {
    enum class Kind { Keep, InverseInDegree, Uniform, RandomUniform };
    Kind kind = Kind::InverseInDegree;
    double value = 0.0;       // Uniform constant
    std::uint64_t seed = 0;   // RandomUniform seed

    // "keep", "inverse-in-degree", "uniform:<c>", "random:<seed>"
    static WeightPolicy parse(std::string_view text);
    std::string describe() const;
};

WeightedDigraph assign_weights(const WeightedDigraph& graph, const WeightPolicy& policy);

struct TendencyDefault {
    enum class Kind { Neutral, Random };
    Kind kind = Kind::Neutral;
    std::uint64_t seed = 0;
    double p_a = 0.0;
    double p_b = 0.0;

    // "neutral" or "random:<seed>:<pA>:<pB>"
    static TendencyDefault parse(std::string_view text);
    std::string describe() const;
};

// Reads "label code" lines (codes 0/1/2); unlisted nodes take `fallback`.
std::vector<Tendency> parse_tendencies(std::istream& in, const WeightedDigraph& graph,
                                       const TendencyDefault& fallback);

// Inverse of parse_edge_list / parse_tendencies. Weights are written with
// round-trip precision; unassigned weights are omitted.
void write_edge_list(const WeightedDigraph& graph, std::ostream& out);
void write_tendencies(const WeightedDigraph& graph, std::ostream& out);

} // namespace udcim
