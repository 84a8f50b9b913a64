#include "udcim/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include "text_util.hpp"
#include "udcim/errors.hpp"
#include "udcim/random.hpp"

namespace udcim {

std::string_view to_string(Tendency t) {
    switch (t) {
    case Tendency::Neutral: return "neutral";
    case Tendency::A: return "A";
    case Tendency::B: return "B";
    }
    return "?";
}

namespace {

bool weight_in_range(double w) { return std::isnan(w) || (w >= 0.0 && w <= 1.0); }

// NaN (unassigned) loses against any assigned weight.
double merge_weights(double a, double b) {
    if (std::isnan(a)) return b;
    if (std::isnan(b)) return a;
    return std::max(a, b);
}

} // namespace

WeightedDigraph WeightedDigraph::from_arcs(std::size_t n, std::vector<Arc> arcs,
                                           std::vector<Tendency> tendencies,
                                           std::vector<std::string> labels) {
    if (n > std::numeric_limits<NodeId>::max()) throw PreconditionError("node count exceeds id range");
    if (!tendencies.empty() && tendencies.size() != n)
        throw PreconditionError("tendency vector size does not match node count");
    if (!labels.empty() && labels.size() != n)
        throw PreconditionError("label vector size does not match node count");

    WeightedDigraph g;
    g.tendencies_ = tendencies.empty() ? std::vector<Tendency>(n, Tendency::Neutral) : std::move(tendencies);
    if (labels.empty()) {
        labels.reserve(n);
        for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    }
    g.labels_ = std::move(labels);
    g.index_.reserve(n);
    for (NodeId i = 0; i < n; ++i) {
        if (!g.index_.emplace(g.labels_[i], i).second)
            throw PreconditionError("duplicate node label '" + g.labels_[i] + "'");
    }

    for (const Arc& a : arcs) {
        if (a.source >= n || a.target >= n) throw PreconditionError("arc endpoint out of range");
        if (!weight_in_range(a.weight))
            throw DomainError("arc weight " + detail::format_double(a.weight) + " outside [0,1]");
    }
    const auto self_loop = [](const Arc& a) { return a.source == a.target; };
    g.stats_.self_loops_dropped = static_cast<std::size_t>(std::count_if(arcs.begin(), arcs.end(), self_loop));
    std::erase_if(arcs, self_loop);

    std::stable_sort(arcs.begin(), arcs.end(), [](const Arc& x, const Arc& y) {
        return std::tie(x.source, x.target) < std::tie(y.source, y.target);
    });
    for (const Arc& a : arcs) {
        if (!g.arcs_.empty() && g.arcs_.back().source == a.source && g.arcs_.back().target == a.target) {
            g.arcs_.back().weight = merge_weights(g.arcs_.back().weight, a.weight);
            ++g.stats_.duplicates_merged;
        } else {
            g.arcs_.push_back(a);
        }
    }
    g.build_adjacency();
    return g;
}

void WeightedDigraph::build_adjacency() {
    const std::size_t n = tendencies_.size();
    out_offsets_.assign(n + 1, 0);
    in_offsets_.assign(n + 1, 0);
    weights_assigned_ = true;
    for (const Arc& a : arcs_) {
        ++out_offsets_[a.source + 1];
        ++in_offsets_[a.target + 1];
        if (std::isnan(a.weight)) weights_assigned_ = false;
    }
    for (std::size_t i = 0; i < n; ++i) {
        out_offsets_[i + 1] += out_offsets_[i];
        in_offsets_[i + 1] += in_offsets_[i];
    }
    out_list_.resize(arcs_.size());
    in_list_.resize(arcs_.size());
    std::vector<std::size_t> out_pos(out_offsets_.begin(), out_offsets_.end() - 1);
    std::vector<std::size_t> in_pos(in_offsets_.begin(), in_offsets_.end() - 1);
    // arcs_ is sorted by (source, target), so in-lists come out sorted by source.
    for (const Arc& a : arcs_) {
        out_list_[out_pos[a.source]++] = {a.target, a.weight};
        in_list_[in_pos[a.target]++] = {a.source, a.weight};
    }
}

std::optional<NodeId> WeightedDigraph::find(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

WeightedDigraph WeightedDigraph::with_weights(std::span<const double> weights) const {
    if (weights.size() != arcs_.size()) throw PreconditionError("weight vector size does not match arc count");
    WeightedDigraph g = *this;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (!weight_in_range(weights[i]))
            throw DomainError("arc weight " + detail::format_double(weights[i]) + " outside [0,1]");
        g.arcs_[i].weight = weights[i];
    }
    g.build_adjacency();
    return g;
}

WeightedDigraph WeightedDigraph::with_tendencies(std::vector<Tendency> tendencies) const {
    if (tendencies.size() != num_nodes()) throw PreconditionError("tendency vector size does not match node count");
    WeightedDigraph g = *this;
    g.tendencies_ = std::move(tendencies);
    return g;
}

WeightedDigraph parse_edge_list(std::istream& in, Directedness directedness) {
    std::vector<std::string> labels;
    std::unordered_map<std::string, NodeId> ids;
    std::vector<Arc> arcs;
    const auto intern = [&](std::string_view label) {
        auto [it, inserted] = ids.emplace(std::string(label), static_cast<NodeId>(labels.size()));
        if (inserted) labels.emplace_back(label);
        return it->second;
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto tokens = detail::split_ws(line);
        if (tokens.empty() || tokens[0].front() == '#' || tokens[0].front() == '%') continue;
        if (tokens.size() != 2 && tokens.size() != 3)
            throw ParseError(line_no, "expected 'u v' or 'u v w', got " + std::to_string(tokens.size()) + " tokens");
        double w = kUnassignedWeight;
        if (tokens.size() == 3) {
            auto parsed = detail::parse_double(tokens[2]);
            if (!parsed || std::isnan(*parsed)) throw ParseError(line_no, "non-numeric weight '" + std::string(tokens[2]) + "'");
            if (*parsed < 0.0 || *parsed > 1.0)
                throw DomainError("line " + std::to_string(line_no) + ": weight " + std::string(tokens[2]) + " outside [0,1]");
            w = *parsed;
        }
        const NodeId u = intern(tokens[0]);
        const NodeId v = intern(tokens[1]);
        arcs.push_back({u, v, w});
        if (directedness == Directedness::Symmetrize) arcs.push_back({v, u, w});
    }
    if (in.bad()) throw ParseError(line_no, "read failure");

    const std::size_t n = labels.size();
    return WeightedDigraph::from_arcs(n, std::move(arcs), {}, std::move(labels));
}

WeightPolicy WeightPolicy::parse(std::string_view text) {
    WeightPolicy p;
    const auto parts = detail::split(text, ':');
    if (parts[0] == "keep" && parts.size() == 1) {
        p.kind = Kind::Keep;
    } else if (parts[0] == "inverse-in-degree" && parts.size() == 1) {
        p.kind = Kind::InverseInDegree;
    } else if (parts[0] == "uniform" && parts.size() == 2) {
        auto c = detail::parse_double(parts[1]);
        if (!c) throw ConfigError("uniform weight policy needs a numeric constant");
        p.kind = Kind::Uniform;
        p.value = *c;
    } else if (parts[0] == "random" && parts.size() == 2) {
        auto s = detail::parse_uint(parts[1]);
        if (!s) throw ConfigError("random weight policy needs an integer seed");
        p.kind = Kind::RandomUniform;
        p.seed = *s;
    } else {
        throw ConfigError("unknown weight policy '" + std::string(text) + "'");
    }
    return p;
}

std::string WeightPolicy::describe() const {
    switch (kind) {
    case Kind::Keep: return "keep";
    case Kind::InverseInDegree: return "inverse-in-degree";
    case Kind::Uniform: return "uniform:" + detail::format_double(value);
    case Kind::RandomUniform: return "random:" + std::to_string(seed);
    }
    return "?";
}

WeightedDigraph assign_weights(const WeightedDigraph& graph, const WeightPolicy& policy) {
    const auto arcs = graph.arcs();
    std::vector<double> w(arcs.size());
    switch (policy.kind) {
    case WeightPolicy::Kind::Keep:
        if (!graph.weights_assigned()) throw PreconditionError("weight policy 'keep' but some arcs have no weight");
        return graph;
    case WeightPolicy::Kind::InverseInDegree:
        for (std::size_t i = 0; i < arcs.size(); ++i) w[i] = 1.0 / static_cast<double>(graph.in_degree(arcs[i].target));
        break;
    case WeightPolicy::Kind::Uniform:
        if (!(policy.value >= 0.0 && policy.value <= 1.0))
            throw DomainError("uniform weight " + detail::format_double(policy.value) + " outside [0,1]");
        std::fill(w.begin(), w.end(), policy.value);
        break;
    case WeightPolicy::Kind::RandomUniform: {
        Rng rng(policy.seed);
        for (double& x : w) x = unit_uniform(rng);
        break;
    }
    }
    return graph.with_weights(w);
}

TendencyDefault TendencyDefault::parse(std::string_view text) {
    TendencyDefault d;
    const auto parts = detail::split(text, ':');
    if (parts[0] == "neutral" && parts.size() == 1) return d;
    if (parts[0] == "random" && parts.size() == 4) {
        auto seed = detail::parse_uint(parts[1]);
        auto pa = detail::parse_double(parts[2]);
        auto pb = detail::parse_double(parts[3]);
        if (!seed || !pa || !pb) throw ConfigError("random tendencies need 'random:<seed>:<pA>:<pB>'");
        d.kind = Kind::Random;
        d.seed = *seed;
        d.p_a = *pa;
        d.p_b = *pb;
        if (d.p_a < 0.0 || d.p_b < 0.0 || d.p_a + d.p_b > 1.0)
            throw DomainError("tendency probabilities must be non-negative with pA + pB <= 1");
        return d;
    }
    throw ConfigError("unknown tendency policy '" + std::string(text) + "'");
}

std::string TendencyDefault::describe() const {
    if (kind == Kind::Neutral) return "neutral";
    return "random:" + std::to_string(seed) + ":" + detail::format_double(p_a) + ":" + detail::format_double(p_b);
}

std::vector<Tendency> parse_tendencies(std::istream& in, const WeightedDigraph& graph,
                                       const TendencyDefault& fallback) {
    const std::size_t n = graph.num_nodes();
    std::vector<Tendency> result(n, Tendency::Neutral);
    if (fallback.kind == TendencyDefault::Kind::Random) {
        if (fallback.p_a < 0.0 || fallback.p_b < 0.0 || fallback.p_a + fallback.p_b > 1.0)
            throw DomainError("tendency probabilities must be non-negative with pA + pB <= 1");
        // One draw per node in id order, listed or not, so the file does not shift the stream.
        Rng rng(fallback.seed);
        for (auto& t : result) {
            const double x = unit_uniform(rng);
            t = x < fallback.p_a ? Tendency::A : (x < fallback.p_a + fallback.p_b ? Tendency::B : Tendency::Neutral);
        }
    }

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto tokens = detail::split_ws(line);
        if (tokens.empty() || tokens[0].front() == '#' || tokens[0].front() == '%') continue;
        if (tokens.size() != 2) throw ParseError(line_no, "expected 'label code'");
        auto code = detail::parse_uint(tokens[1]);
        if (!code) throw ParseError(line_no, "non-numeric tendency code '" + std::string(tokens[1]) + "'");
        if (*code > 2) throw DomainError("line " + std::to_string(line_no) + ": tendency code " + std::string(tokens[1]) + " not in {0,1,2}");
        auto id = graph.find(tokens[0]);
        if (!id) throw ParseError(line_no, "unknown node label '" + std::string(tokens[0]) + "'");
        result[*id] = static_cast<Tendency>(*code);
    }
    if (in.bad()) throw ParseError(line_no, "read failure");
    return result;
}

void write_edge_list(const WeightedDigraph& graph, std::ostream& out) {
    for (const Arc& a : graph.arcs()) {
        out << graph.label(a.source) << ' ' << graph.label(a.target);
        if (!std::isnan(a.weight)) out << ' ' << detail::format_double(a.weight);
        out << '\n';
    }
}

void write_tendencies(const WeightedDigraph& graph, std::ostream& out) {
    for (NodeId u = 0; u < graph.num_nodes(); ++u) {
        out << graph.label(u) << ' ' << static_cast<int>(graph.tendency(u)) << '\n';
    }
}

} // namespace udcim
