#include "udcim/csbga.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "udcim/errors.hpp"

namespace udcim {

void GAConfig::validate() const {
    if (population_size < 4) throw ConfigError("population size must be at least 4");
    if (tournament_size < 2) throw ConfigError("tournament size must be at least 2");
    if (tournament_size > population_size) throw ConfigError("tournament size exceeds population size");
    if (!(mutation_gene_fraction > 0.0 && mutation_gene_fraction < 1.0))
        throw ConfigError("mutation gene fraction must lie in (0,1)");
    if (!(mutation_accept_probability > 0.0 && mutation_accept_probability < 1.0))
        throw ConfigError("mutation accept probability must lie in (0,1)");
}

std::vector<NodeId> GAProblem::candidates() const {
    std::vector<char> excluded(graph.num_nodes(), 0);
    for (NodeId u : seeds_a) {
        if (u < graph.num_nodes()) excluded[u] = 1;
    }
    std::vector<NodeId> out;
    for (NodeId u = 0; u < graph.num_nodes(); ++u) {
        if (!excluded[u]) out.push_back(u);
    }
    return out;
}

double fitness(const GAProblem& problem, const Individual& individual) {
    const DiffusionResult r = diffuse(problem.graph, problem.thresholds, problem.seeds_a, individual.genes);
    return static_cast<double>(r.sigma_b) - static_cast<double>(r.sigma_a);
}

namespace {

// Strict "a is preferred over b": higher fitness, then smaller gene list.
bool better(const Individual& a, const Individual& b) {
    if (*a.fitness != *b.fitness) return *a.fitness > *b.fitness;
    return a.genes < b.genes;
}

void evaluate(const GAProblem& problem, Individual& ind) {
    if (!ind.fitness) ind.fitness = fitness(problem, ind);
}

void repair(std::vector<NodeId>& genes, std::span<const NodeId> candidates, Rng& rng) {
    std::vector<NodeId> seen;
    seen.reserve(genes.size());
    for (std::size_t i = 0; i < genes.size(); ++i) {
        if (std::find(seen.begin(), seen.end(), genes[i]) == seen.end()) {
            seen.push_back(genes[i]);
            continue;
        }
        std::vector<NodeId> available;
        for (NodeId c : candidates) {
            if (std::find(genes.begin(), genes.end(), c) == genes.end()) available.push_back(c);
        }
        if (available.empty()) throw PreconditionError("crossover repair: no free candidate left");
        genes[i] = available[uniform_index(rng, available.size())];
        seen.push_back(genes[i]);
    }
}

} // namespace

Population init_population(const GAProblem& problem, const GAConfig& config, Rng& rng) {
    std::vector<NodeId> pool = problem.candidates();
    if (problem.k == 0) throw PreconditionError("k must be at least 1");
    if (problem.k > pool.size())
        throw PreconditionError("k = " + std::to_string(problem.k) + " exceeds |V \\ S_A| = " + std::to_string(pool.size()));
    Population population;
    population.reserve(config.population_size);
    for (std::size_t i = 0; i < config.population_size; ++i) {
        partial_shuffle(std::span<NodeId>(pool), problem.k, rng);
        Individual ind;
        ind.genes.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(problem.k));
        evaluate(problem, ind);
        population.push_back(std::move(ind));
    }
    return population;
}

const Individual& tournament_select(const Population& population, std::size_t tournament_size, Rng& rng) {
    if (tournament_size == 0 || tournament_size > population.size())
        throw PreconditionError("tournament size must lie in 1..population size");
    std::vector<std::size_t> index(population.size());
    for (std::size_t i = 0; i < index.size(); ++i) index[i] = i;
    partial_shuffle(std::span<std::size_t>(index), tournament_size, rng);
    std::size_t winner = index[0];
    for (std::size_t i = 1; i < tournament_size; ++i) {
        if (better(population[index[i]], population[winner])) winner = index[i];
    }
    return population[winner];
}

std::pair<Individual, Individual> crossover(const Individual& parent1, const Individual& parent2,
                                            std::span<const NodeId> candidates, Rng& rng) {
    const std::size_t k = parent1.genes.size();
    if (parent2.genes.size() != k) throw PreconditionError("crossover parents differ in length");
    if (k <= 1) return {parent1, parent2};

    const std::size_t cut = 1 + uniform_index(rng, k - 1);
    Individual c1, c2;
    c1.genes.assign(parent1.genes.begin(), parent1.genes.begin() + static_cast<std::ptrdiff_t>(cut));
    c1.genes.insert(c1.genes.end(), parent2.genes.begin() + static_cast<std::ptrdiff_t>(cut), parent2.genes.end());
    c2.genes.assign(parent2.genes.begin(), parent2.genes.begin() + static_cast<std::ptrdiff_t>(cut));
    c2.genes.insert(c2.genes.end(), parent1.genes.begin() + static_cast<std::ptrdiff_t>(cut), parent1.genes.end());
    repair(c1.genes, candidates, rng);
    repair(c2.genes, candidates, rng);
    return {std::move(c1), std::move(c2)};
}

double community_score(double pagerank_sum, std::size_t size) {
    return pagerank_sum * static_cast<double>(size);
}

MutationPool build_mutation_pool(const WeightedDigraph& graph, std::span<const NodeId> seeds_a,
                                 const Thresholds& thresholds, const CommunityPartition& partition,
                                 const PageRankVector& pagerank) {
    const std::size_t n = graph.num_nodes();
    if (partition.assignment.size() != n) throw PreconditionError("partition does not cover every node");
    if (pagerank.scores.size() != n) throw PreconditionError("pagerank vector size does not match node count");

    const DiffusionResult spread = diffuse(graph, thresholds, seeds_a, {});
    std::vector<char> touched(partition.communities.size(), 0);
    for (NodeId u : influenced_set(spread, Side::A)) touched[partition.assignment[u]] = 1;
    std::vector<char> in_seeds_a(n, 0);
    for (NodeId u : seeds_a) in_seeds_a[u] = 1;

    MutationPool pool;
    for (std::uint32_t c = 0; c < partition.communities.size(); ++c) {
        if (!touched[c]) continue;
        double sum = 0.0;
        for (NodeId u : partition.communities[c]) sum += pagerank.scores[u];
        pool.communities.push_back({c, community_score(sum, partition.communities[c].size())});
    }
    std::stable_sort(pool.communities.begin(), pool.communities.end(),
                     [](const auto& a, const auto& b) { return a.score > b.score; });

    for (const auto& sc : pool.communities) {
        std::vector<NodeId> members;
        for (NodeId u : partition.communities[sc.community]) {
            if (!in_seeds_a[u]) members.push_back(u);
        }
        const auto ranked = rank_by_out_degree(graph, members);
        pool.community_order.insert(pool.community_order.end(), ranked.begin(), ranked.end());
    }
    pool.ordered = rank_by_out_degree(graph, pool.community_order);
    return pool;
}

std::size_t mutation_count(std::size_t k, double fraction) {
    const auto m = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(k)));
    return std::min(k, std::max<std::size_t>(1, m));
}

Individual mutate(const Individual& individual, const MutationPool& pool, const GAConfig& config, Rng& rng) {
    if (pool.ordered.empty() || individual.genes.empty()) return individual;
    Individual out = individual;
    const std::size_t k = out.genes.size();
    std::vector<std::size_t> positions(k);
    for (std::size_t i = 0; i < k; ++i) positions[i] = i;
    const std::size_t m = mutation_count(k, config.mutation_gene_fraction);
    partial_shuffle(std::span<std::size_t>(positions), m, rng);

    bool changed = false;
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t pos = positions[j];
        for (NodeId v : pool.ordered) {
            const bool accepted = unit_uniform(rng) < config.mutation_accept_probability;
            if (accepted && std::find(out.genes.begin(), out.genes.end(), v) == out.genes.end()) {
                out.genes[pos] = v;
                changed = true;
                break;
            }
        }
    }
    if (changed) out.fitness.reset();
    return out;
}

EvolveResult evolve(const WeightedDigraph& graph, const Thresholds& thresholds, std::span<const NodeId> seeds_a,
                    std::size_t k, const GAConfig& config, const CommunityPartition& partition,
                    const PageRankOptions& pagerank_options) {
    config.validate();
    const GAProblem problem{graph, thresholds, std::vector<NodeId>(seeds_a.begin(), seeds_a.end()), k};
    const std::vector<NodeId> candidates = problem.candidates();

    Rng rng(config.rng_seed);
    const PageRankVector pr = pagerank(graph, pagerank_options);
    const MutationPool pool = build_mutation_pool(graph, seeds_a, thresholds, partition, pr);

    EvolveResult result;
    result.pool_empty = pool.ordered.empty();
    Population population = init_population(problem, config, rng);
    result.best = *std::min_element(population.begin(), population.end(),
                                    [](const Individual& a, const Individual& b) { return better(a, b); });
    result.best_trace.push_back(*result.best.fitness);

    // Eviction order: lowest fitness first, larger gene list first among ties.
    const auto worse = [](const Individual& a, const Individual& b) { return better(b, a); };

    for (std::size_t gen = 0; gen < config.generations; ++gen) {
        const Individual parent1 = tournament_select(population, config.tournament_size, rng);
        const Individual parent2 = tournament_select(population, config.tournament_size, rng);
        auto [child1, child2] = crossover(parent1, parent2, candidates, rng);
        child1 = mutate(child1, pool, config, rng);
        child2 = mutate(child2, pool, config, rng);
        evaluate(problem, child1);
        evaluate(problem, child2);
        for (const Individual* c : {&child1, &child2}) {
            if (better(*c, result.best)) result.best = *c;
        }

        const double weakest = *std::min_element(population.begin(), population.end(), worse)->fitness;
        if (*child1.fitness > weakest || *child2.fitness > weakest) {
            population.push_back(std::move(child1));
            population.push_back(std::move(child2));
            for (int i = 0; i < 2; ++i) population.erase(std::min_element(population.begin(), population.end(), worse));
        }
        result.best_trace.push_back(*result.best.fitness);
    }
    result.final_population = std::move(population);
    return result;
}

} // namespace udcim
