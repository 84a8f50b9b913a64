#include "udcim/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "text_util.hpp"
#include "udcim/analytics.hpp"
#include "udcim/errors.hpp"
#include "udcim/lodbh.hpp"
#include "udcim/random.hpp"

namespace udcim {

std::string to_string(Algorithm algorithm) {
    switch (algorithm) {
    case Algorithm::Lodbh: return "lodbh";
    case Algorithm::Csbga: return "csbga";
    case Algorithm::Exact: return "exact";
    case Algorithm::RandomBaseline: return "random-baseline";
    }
    return "?";
}

Algorithm parse_algorithm(std::string_view name) {
    for (Algorithm a : {Algorithm::Lodbh, Algorithm::Csbga, Algorithm::Exact, Algorithm::RandomBaseline}) {
        if (to_string(a) == name) return a;
    }
    throw ConfigError("unknown algorithm '" + std::string(name) + "'");
}

bool is_stochastic(Algorithm algorithm) {
    return algorithm == Algorithm::Csbga || algorithm == Algorithm::RandomBaseline;
}

SeedASpec SeedASpec::parse(std::string_view text) {
    SeedASpec spec;
    if (text.rfind("list:", 0) == 0) {
        spec.kind = Kind::Explicit;
        for (auto label : detail::split(text.substr(5), ',')) {
            if (label.empty()) throw ConfigError("empty label in seed list '" + std::string(text) + "'");
            spec.labels.emplace_back(label);
        }
        return spec;
    }
    const auto parts = detail::split(text, ':');
    if (parts[0] == "top" && parts.size() <= 2) {
        spec.kind = Kind::TopOutDegree;
        if (parts.size() == 2) {
            const auto n = detail::parse_uint(parts[1]);
            if (!n) throw ConfigError("seed spec 'top:<n>' needs an integer count");
            spec.count = *n;
        }
        return spec;
    }
    if (parts[0] == "random" && (parts.size() == 2 || parts.size() == 3)) {
        spec.kind = Kind::Random;
        const auto seed = detail::parse_uint(parts[1]);
        if (!seed) throw ConfigError("seed spec 'random:<seed>' needs an integer seed");
        spec.seed = *seed;
        if (parts.size() == 3) {
            const auto n = detail::parse_uint(parts[2]);
            if (!n) throw ConfigError("seed spec 'random:<seed>:<n>' needs an integer count");
            spec.count = *n;
        }
        return spec;
    }
    throw ConfigError("unknown seed spec '" + std::string(text) + "'");
}

std::string SeedASpec::describe() const {
    switch (kind) {
    case Kind::Explicit: {
        std::string out = "list:";
        for (std::size_t i = 0; i < labels.size(); ++i) out += (i ? "," : "") + labels[i];
        return out;
    }
    case Kind::TopOutDegree: return count ? "top:" + std::to_string(*count) : "top";
    case Kind::Random: return "random:" + std::to_string(seed) + (count ? ":" + std::to_string(*count) : "");
    }
    return "?";
}

std::vector<NodeId> resolve_seeds(const WeightedDigraph& graph, const SeedASpec& spec, std::size_t k) {
    std::vector<NodeId> out;
    const std::size_t count = spec.count.value_or(k);
    switch (spec.kind) {
    case SeedASpec::Kind::Explicit:
        for (const std::string& label : spec.labels) {
            const auto id = graph.find(label);
            if (!id) throw ConfigError("seed label '" + label + "' is not a node of the graph");
            out.push_back(*id);
        }
        break;
    case SeedASpec::Kind::TopOutDegree: {
        if (count > graph.num_nodes()) throw ConfigError("seed count exceeds the node count");
        std::vector<NodeId> all(graph.num_nodes());
        for (NodeId u = 0; u < all.size(); ++u) all[u] = u;
        const auto ranked = rank_by_out_degree(graph, all);
        out.assign(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(count));
        break;
    }
    case SeedASpec::Kind::Random: out = random_seeds(graph, {}, count, spec.seed); break;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<NodeId> random_seeds(const WeightedDigraph& graph, std::span<const NodeId> seeds_a, std::size_t k,
                                 std::uint64_t rng_seed) {
    std::vector<char> excluded(graph.num_nodes(), 0);
    for (NodeId u : seeds_a) excluded[u] = 1;
    std::vector<NodeId> pool;
    for (NodeId u = 0; u < graph.num_nodes(); ++u) {
        if (!excluded[u]) pool.push_back(u);
    }
    if (k > pool.size()) throw ConfigError("cannot draw " + std::to_string(k) + " seeds from " +
                                           std::to_string(pool.size()) + " candidates");
    Rng rng(rng_seed);
    partial_shuffle(std::span<NodeId>(pool), k, rng);
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

Dataset make_dataset(std::string name, const WeightedDigraph& graph, const WeightPolicy& weights,
                     const std::string& tendencies) {
    Dataset d{std::move(name), assign_weights(graph, weights), weights.describe(), tendencies};
    const bool is_policy = tendencies == "neutral" || tendencies.rfind("random:", 0) == 0;
    if (is_policy) {
        const TendencyDefault policy = TendencyDefault::parse(tendencies);
        std::istringstream empty;
        d.graph = d.graph.with_tendencies(parse_tendencies(empty, d.graph, policy));
        d.tendencies = policy.describe();
    } else {
        std::ifstream in(tendencies);
        if (!in) throw ConfigError("cannot open tendency file '" + tendencies + "'");
        d.graph = d.graph.with_tendencies(parse_tendencies(in, d.graph, TendencyDefault{}));
        d.tendencies = "file:" + std::filesystem::path(tendencies).filename().string();
    }
    return d;
}

Dataset load_dataset(const DatasetSource& source) {
    std::ifstream in(source.path);
    if (!in) throw ConfigError("cannot open graph file '" + source.path + "'");
    const WeightedDigraph raw = parse_edge_list(in, source.directedness);
    std::string name = source.name.empty() ? std::filesystem::path(source.path).stem().string() : source.name;
    return make_dataset(std::move(name), raw, source.weights, source.tendencies);
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

double to_millis(double seconds) {
    return std::round(seconds * 1000.0) / 1000.0;
}

struct Outcome {
    std::vector<NodeId> seeds_b;
    DiffusionResult spread;
    bool short_set = false;
};

std::vector<std::string> labels_of(const WeightedDigraph& graph, std::span<const NodeId> ids) {
    std::vector<std::string> out;
    for (NodeId u : ids) out.emplace_back(graph.label(u));
    return out;
}

// Keeps the row's identity, drops partial results.
RunRow failed(const RunRow& row, RunRow::Status status, const char* what) {
    RunRow out;
    out.algorithm = row.algorithm;
    out.status = status;
    out.error = what;
    out.repetitions = row.repetitions;
    out.rng_seed = row.rng_seed;
    out.averaged = row.averaged;
    return out;
}

} // namespace

RunReport run_experiment(const Dataset& dataset, const ExperimentConfig& config) {
    const WeightedDigraph& g = dataset.graph;
    if (config.algorithms.empty()) throw ConfigError("no algorithms requested");
    if (config.repetitions == 0) throw ConfigError("repetitions must be at least 1");
    std::optional<Thresholds> thr_holder;
    try {
        thr_holder.emplace(config.theta1, config.theta2);
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    const Thresholds& thr = *thr_holder;
    if (!g.weights_assigned()) throw ConfigError("graph weights are unassigned; choose a weight policy");

    const std::vector<NodeId> seeds_a = resolve_seeds(g, config.seed_a, config.k);
    const std::size_t available = g.num_nodes() - seeds_a.size();
    if (config.k == 0 || config.k > available)
        throw ConfigError("infeasible k = " + std::to_string(config.k) + " with " + std::to_string(available) +
                          " nodes outside S_A");
    config.ga.validate();

    RunReport report;
    report.dataset = dataset.name;
    report.n = g.num_nodes();
    report.m = g.num_arcs();
    report.weights = dataset.weights;
    report.tendencies = dataset.tendencies;
    report.seed_a = config.seed_a.describe();
    report.seeds_a = labels_of(g, seeds_a);
    report.theta1 = config.theta1;
    report.theta2 = config.theta2;
    report.k = config.k;
    report.rng_seed = config.rng_seed;

    const bool needs_partition = std::any_of(config.algorithms.begin(), config.algorithms.end(), [](Algorithm a) {
        return a == Algorithm::Lodbh || a == Algorithm::Csbga;
    });
    CommunityPartition partition;
    if (needs_partition) {
        auto start = Clock::now();
        partition = louvain(g, config.rng_seed);
        report.louvain_seconds = config.record_timing ? to_millis(seconds_since(start)) : 0.0;
        report.communities = partition.communities.size();
        start = Clock::now();
        (void)pagerank(g);
        report.pagerank_seconds = config.record_timing ? to_millis(seconds_since(start)) : 0.0;
    }

    for (Algorithm algorithm : config.algorithms) {
        RunRow row;
        row.algorithm = algorithm;
        row.averaged = is_stochastic(algorithm);
        row.repetitions = row.averaged ? config.repetitions : 1;
        row.rng_seed = row.averaged ? config.rng_seed : 0;
        double total_time = 0.0, total_a = 0.0, total_b = 0.0, total_non_seed = 0.0;
        try {
            for (std::size_t rep = 0; rep < row.repetitions; ++rep) {
                const std::uint64_t seed = config.rng_seed + rep;
                const auto start = Clock::now();
                Outcome out;
                switch (algorithm) {
                case Algorithm::Lodbh: {
                    const LodbhResult r = get_seed_sb(g, thr, seeds_a, config.k, partition);
                    out.seeds_b = r.seeds_b;
                    out.short_set = r.short_set;
                    break;
                }
                case Algorithm::Csbga: {
                    GAConfig ga = config.ga;
                    ga.rng_seed = seed;
                    out.seeds_b = evolve(g, thr, seeds_a, config.k, ga, partition).best.genes;
                    break;
                }
                case Algorithm::Exact:
                    out.seeds_b = brute_force(g, thr, seeds_a, config.k, config.exact).seeds_b;
                    break;
                case Algorithm::RandomBaseline: out.seeds_b = random_seeds(g, seeds_a, config.k, seed); break;
                }
                out.spread = diffuse(g, thr, seeds_a, out.seeds_b);
                total_time += seconds_since(start);
                total_a += static_cast<double>(out.spread.sigma_a);
                total_b += static_cast<double>(out.spread.sigma_b);
                total_non_seed += static_cast<double>(out.spread.sigma_b - out.seeds_b.size());
                row.short_set = row.short_set || out.short_set;
                if (!row.averaged) {
                    std::vector<NodeId> sorted = out.seeds_b;
                    std::sort(sorted.begin(), sorted.end());
                    row.seeds_b = labels_of(g, sorted);
                }
            }
            const double reps = static_cast<double>(row.repetitions);
            row.sigma_a = total_a / reps;
            row.sigma_b = total_b / reps;
            row.sigma_b_non_seed = total_non_seed / reps;
            row.wall_time_seconds = config.record_timing ? to_millis(total_time / reps) : 0.0;
        } catch (const CapExceededError& e) {
            row = failed(row, RunRow::Status::CapExceeded, e.what());
        } catch (const Error& e) {
            row = failed(row, RunRow::Status::Error, e.what());
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace udcim
