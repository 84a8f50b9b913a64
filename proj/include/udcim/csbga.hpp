#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "udcim/analytics.hpp"
#include "udcim/diffusion.hpp"
#include "udcim/graph.hpp"
#include "udcim/random.hpp"

namespace udcim {

// Candidate S_B: k distinct genes, none in S_A.
struct Individual {
    std::vector<NodeId> genes;
    std::optional<double> fitness;
};

using Population = std::vector<Individual>;

struct GAConfig {
    std::size_t population_size = 50;
    std::size_t generations = 200;
    std::size_t tournament_size = 4;
    double mutation_gene_fraction = 0.05;
    double mutation_accept_probability = 0.5;
    std::uint64_t rng_seed = 1;

    // Throws ConfigError on p < 4, t < 2, t > p or fractions outside (0,1).
    void validate() const;
};

// Everything fitness evaluation needs; the graph must outlive the context.
struct GAProblem {
    const WeightedDigraph& graph;
    Thresholds thresholds;
    std::vector<NodeId> seeds_a;
    std::size_t k;

    // V \ S_A, ascending.
    std::vector<NodeId> candidates() const;
};

// f = σ_B − σ_A of the joint diffusion with S_B = genes.
double fitness(const GAProblem& problem, const Individual& individual);

Population init_population(const GAProblem& problem, const GAConfig& config, Rng& rng);

// Best of `tournament_size` distinct individuals drawn uniformly; fitness ties
// go to the lexicographically smaller gene list.
const Individual& tournament_select(const Population& population, std::size_t tournament_size, Rng& rng);

// One-point crossover with the cut drawn from 1..k-1. Duplicate genes in a
// child are replaced by uniform draws from `candidates` not already present.
std::pair<Individual, Individual> crossover(const Individual& parent1, const Individual& parent2,
                                            std::span<const NodeId> candidates, Rng& rng);

struct MutationPool {
    struct ScoredCommunity {
        std::uint32_t community;
        double score;  // |c| * sum of PageRank over c
    };
    std::vector<ScoredCommunity> communities;  // touched communities, by descending score
    std::vector<NodeId> community_order;       // members concatenated in community order
    std::vector<NodeId> ordered;               // community_order re-ranked by out-degree; what mutate walks
};

double community_score(double pagerank_sum, std::size_t size);

MutationPool build_mutation_pool(const WeightedDigraph& graph, std::span<const NodeId> seeds_a,
                                 const Thresholds& thresholds, const CommunityPartition& partition,
                                 const PageRankVector& pagerank);

// Number of genes mutate() touches: max(1, round(fraction * k)).
std::size_t mutation_count(std::size_t k, double fraction);

Individual mutate(const Individual& individual, const MutationPool& pool, const GAConfig& config, Rng& rng);

struct EvolveResult {
    Individual best;
    std::vector<double> best_trace;  // best-so-far fitness, index 0 = initial population
    Population final_population;
    bool pool_empty = false;
};

// Steady-state GA. PageRank and the mutation pool are computed internally.
EvolveResult evolve(const WeightedDigraph& graph, const Thresholds& thresholds, std::span<const NodeId> seeds_a,
                    std::size_t k, const GAConfig& config, const CommunityPartition& partition,
                    const PageRankOptions& pagerank_options = {});

} // namespace udcim
