#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "udcim/diffusion.hpp"
#include "udcim/graph.hpp"

namespace udcim {

// ---------------------------------------------------------------------------
// Exhaustive search

enum class BruteForceObjective {
    SigmaB,              // maximize σ_B
    SigmaBMinusSigmaA,   // maximize σ_B − σ_A (the GA fitness)
};

struct BruteForceOptions {
    std::uint64_t combination_cap = 2'000'000;
    BruteForceObjective objective = BruteForceObjective::SigmaB;
};

struct BruteForceResult {
    std::vector<NodeId> seeds_b;  // ascending
    std::size_t sigma_a = 0;
    std::size_t sigma_b = 0;
    double objective = 0.0;
    std::uint64_t evaluated = 0;
};

// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

// Evaluates every k-subset of V \ S_A; ties go to the lexicographically
// smallest sorted subset. Throws CapExceededError when C(|V \ S_A|, k)
// exceeds the cap.
BruteForceResult brute_force(const WeightedDigraph& graph, const Thresholds& thresholds,
                             std::span<const NodeId> seeds_a, std::size_t k, const BruteForceOptions& options = {});

// ---------------------------------------------------------------------------
// MILP model

struct LinearTerm {
    std::size_t var;
    double coef;
};

enum class Sense { LessEqual, GreaterEqual, Equal };

struct Constraint {
    std::string name;
    std::vector<LinearTerm> terms;
    Sense sense;
    double rhs;
};

struct MilpVariable {
    std::string name;
    std::size_t node;
    std::size_t round;
};

/**
 * Pure binary program over the round-indexed diffusion variables.
 *
 * Per node u and round r in 0..R the model declares A_u_r, B_u_r (committed
 * to A / B by round r), T_u_r (committed to either side) and four threshold
 * indicators T1..T4_u_r. Auxiliary binaries are named z_<tag>_u_r. All
 * variables are binary.
 */
struct MilpModel {
    std::size_t nodes = 0;
    std::size_t horizon = 0;  // R
    std::vector<MilpVariable> variables;
    std::vector<LinearTerm> objective;  // maximized
    std::vector<Constraint> constraints;
    std::size_t auxiliary_count = 0;
    std::size_t approximate_gaps = 0;  // indicators whose below-threshold bound fell back to a fixed margin

    std::size_t core_variable_count() const { return variables.size() - auxiliary_count; }
};

struct MilpOptions {
    std::size_t node_cap = 200;
    std::size_t horizon = 0;          // 0 means R = n
    std::size_t exact_gap_degree = 12;  // in-degree up to which subset sums are enumerated
};

// Builds the model maximizing Σ_{u ∉ S_A} B_u_R + ε Σ_u A_u_R with ε = 1/(2n),
// subject to at most |S_A| A-seeds (exactly S_A) and at most k B-seeds.
// Throws PreconditionError on n = 0 and CapExceededError when n > node_cap.
MilpModel build_milp(const WeightedDigraph& graph, const Thresholds& thresholds, std::span<const NodeId> seeds_a,
                     std::size_t k, const MilpOptions& options = {});

// Writes the model in CPLEX LP text format.
void write_lp(const MilpModel& model, std::ostream& out);

struct EmissionSummary {
    std::size_t variables = 0;
    std::size_t auxiliary = 0;
    std::size_t constraints = 0;
    std::size_t approximate_gaps = 0;
};

EmissionSummary emit_milp(const WeightedDigraph& graph, const Thresholds& thresholds, std::span<const NodeId> seeds_a,
                          std::size_t k, std::ostream& out, const MilpOptions& options = {});

// Values of every model variable along the diffusion run seeded by (S_A, S_B).
// Keys are variable names.
std::map<std::string, int> trace_assignment(const MilpModel& model, const WeightedDigraph& graph,
                                            const Thresholds& thresholds, std::span<const NodeId> seeds_a,
                                            std::span<const NodeId> seeds_b);

// ---------------------------------------------------------------------------
// LP text reading and exhaustive checking

// A model read back from LP text; independent of MilpModel.
struct LpProgram {
    bool maximize = true;
    std::vector<std::string> variables;               // declaration order of first appearance
    std::map<std::string, std::size_t> index;
    std::vector<LinearTerm> objective;
    std::vector<Constraint> constraints;
    std::vector<std::size_t> binaries;
};

// Parses the subset of CPLEX LP format written by write_lp (objective,
// Subject To, Binary/Binaries, End). Throws ParseError on malformed input.
LpProgram read_lp(std::istream& in);

// Evaluates one constraint (absolute tolerance 1e-9).
bool satisfied(const Constraint& c, std::span<const int> values);

struct LpCheckResult {
    bool feasible = false;
    double objective = 0.0;
    std::vector<int> best;           // optimal assignment
    std::uint64_t leaves = 0;        // complete feasible assignments visited
    std::uint64_t block_trials = 0;  // single-variable assignments tried
};

// Exhaustive 0/1 search over a pure binary program. Variables named
// <prefix>_u_r are grouped into blocks ordered by (r, u) and assigned one at a
// time; each constraint is checked as soon as its last variable is set. Exact
// for any constraint list; fast when most variables are forced by earlier
// ones. Throws PreconditionError if a variable is not binary or a block holds
// more than max_block_size variables.
LpCheckResult exhaustive_solve(const LpProgram& program, std::size_t max_block_size = 16);

} // namespace udcim
