#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "udcim/csbga.hpp"
#include "udcim/diffusion.hpp"
#include "udcim/exact.hpp"
#include "udcim/graph.hpp"

namespace udcim {

inline constexpr const char* kToolVersion = "0.1.0";

enum class Algorithm { Lodbh, Csbga, Exact, RandomBaseline };

std::string to_string(Algorithm algorithm);
// "lodbh", "csbga", "exact", "random-baseline"; throws ConfigError otherwise.
Algorithm parse_algorithm(std::string_view name);
bool is_stochastic(Algorithm algorithm);

// How S_A is chosen.
struct SeedASpec {
    enum class Kind { Explicit, TopOutDegree, Random };
    Kind kind = Kind::TopOutDegree;
    std::vector<std::string> labels;  // Explicit
    std::optional<std::size_t> count;  // TopOutDegree / Random; defaults to k
    std::uint64_t seed = 0;            // Random

    // "top", "top:<n>", "random:<seed>", "random:<seed>:<n>", "list:<l1>,<l2>,..."
    static SeedASpec parse(std::string_view text);
    std::string describe() const;
};

// Resolves the spec against a graph; ids come back ascending.
std::vector<NodeId> resolve_seeds(const WeightedDigraph& graph, const SeedASpec& spec, std::size_t k);

// A loaded, weighted graph with tendencies and the descriptors that produced it.
struct Dataset {
    std::string name;
    WeightedDigraph graph;
    std::string weights;
    std::string tendencies;
};

struct DatasetSource {
    std::string path;
    std::string name;  // defaults to the file stem
    Directedness directedness = Directedness::AsDirected;
    WeightPolicy weights;
    // A tendency policy ("neutral", "random:<seed>:<pA>:<pB>") or a path to a
    // "label code" file; unlisted nodes are Neutral.
    std::string tendencies = "neutral";
};

Dataset load_dataset(const DatasetSource& source);

// Applies the weight policy and tendency source to an in-memory graph.
Dataset make_dataset(std::string name, const WeightedDigraph& graph, const WeightPolicy& weights,
                     const std::string& tendencies);

struct ExperimentConfig {
    double theta1 = 0.5;
    double theta2 = 0.3;
    std::size_t k = 1;
    SeedASpec seed_a;
    std::vector<Algorithm> algorithms{Algorithm::Lodbh};
    std::uint64_t rng_seed = 1;
    std::size_t repetitions = 5;  // stochastic algorithms only
    GAConfig ga;                  // rng_seed is overridden per repetition
    BruteForceOptions exact;
    bool record_timing = true;    // false zeroes every time for reproducible output
};

struct RunRow {
    enum class Status { Ok, Error, CapExceeded };

    Algorithm algorithm = Algorithm::Lodbh;
    Status status = Status::Ok;
    std::string error;
    std::size_t repetitions = 1;
    std::uint64_t rng_seed = 0;          // base seed of the repetitions; 0 for deterministic rows
    bool averaged = false;
    double sigma_a = 0.0;                // seeds included; mean when averaged
    double sigma_b = 0.0;
    double sigma_b_non_seed = 0.0;       // σ_B minus |S_B|
    double wall_time_seconds = 0.0;      // mean per repetition, millisecond resolution
    std::vector<std::string> seeds_b;    // labels; deterministic rows only
    bool short_set = false;              // LODBH found fewer than k candidates

    bool operator==(const RunRow&) const = default;
};

struct RunReport {
    std::string tool_version = kToolVersion;
    std::string dataset;
    std::size_t n = 0;
    std::size_t m = 0;
    std::string weights;
    std::string tendencies;
    std::string seed_a;
    std::vector<std::string> seeds_a;
    double theta1 = 0.0;
    double theta2 = 0.0;
    std::size_t k = 0;
    std::uint64_t rng_seed = 0;
    std::size_t communities = 0;
    double louvain_seconds = 0.0;
    double pagerank_seconds = 0.0;
    std::vector<RunRow> rows;

    bool operator==(const RunReport&) const = default;
};

// Throws ConfigError on invalid thresholds, an empty algorithm list, k = 0 or
// k > |V \ S_A|. Failures of a single algorithm become error rows.
RunReport run_experiment(const Dataset& dataset, const ExperimentConfig& config);

// k distinct nodes of V \ S_A drawn uniformly.
std::vector<NodeId> random_seeds(const WeightedDigraph& graph, std::span<const NodeId> seeds_a, std::size_t k,
                                 std::uint64_t rng_seed);

enum class ReportFormat { Json, Csv };
ReportFormat parse_report_format(std::string_view text);

std::string emit_report(const RunReport& report, ReportFormat format);
// Inverse of the JSON form; throws ParseError on malformed documents.
RunReport parse_report_json(std::string_view text);

inline constexpr const char* kCsvHeader =
    "dataset,n,m,algorithm,status,repetitions,rng_seed,k,theta1,theta2,sigma_A,sigma_B,sigma_B_non_seed,"
    "wall_time_seconds,error";

} // namespace udcim
