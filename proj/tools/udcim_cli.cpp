// Command-line front end: diffusion runs, seed selection, exact search, LP
// emission, benchmarks and synthetic graph generation.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "udcim/errors.hpp"
#include "udcim/exact.hpp"
#include "udcim/experiment.hpp"
#include "udcim/synthetic.hpp"

namespace {

using namespace udcim;

enum ExitCode { kOk = 0, kConfig = 2, kData = 3, kCap = 4 };

struct Common {
    std::string graph;
    std::string name;
    bool undirected = false;
    std::string weights = "inverse-in-degree";
    std::string tendencies = "neutral";
    double theta1 = 0.5;
    double theta2 = 0.3;
    std::size_t k = 1;
    std::string seed_a = "top";
    std::uint64_t rng_seed = 1;
    std::string format = "json";
    std::string out;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--graph", c.graph, "edge list: 'u v' or 'u v w' per line")->required();
    cmd->add_option("--name", c.name, "dataset name in reports (default: file stem)");
    cmd->add_flag("--undirected", c.undirected, "add both directions for every listed pair");
    cmd->add_option("--weights", c.weights, "keep | inverse-in-degree | uniform:<c> | random:<seed>")
        ->capture_default_str();
    cmd->add_option("--tendencies", c.tendencies, "neutral | random:<seed>:<pA>:<pB> | <file of 'label code'>")
        ->capture_default_str();
    cmd->add_option("--theta1", c.theta1)->capture_default_str();
    cmd->add_option("--theta2", c.theta2)->capture_default_str();
    cmd->add_option("--k", c.k, "seed budget")->capture_default_str();
    cmd->add_option("--seed-a", c.seed_a, "top | top:<n> | random:<seed>[:<n>] | list:<l1>,<l2>,...")
        ->capture_default_str();
    cmd->add_option("--rng-seed", c.rng_seed)->capture_default_str();
    cmd->add_option("--format", c.format, "json | csv")->capture_default_str();
    cmd->add_option("--out", c.out, "output path (default: stdout)");
}

Dataset load(const Common& c) {
    DatasetSource src;
    src.path = c.graph;
    src.name = c.name;
    src.directedness = c.undirected ? Directedness::Symmetrize : Directedness::AsDirected;
    src.weights = WeightPolicy::parse(c.weights);
    src.tendencies = c.tendencies;
    return load_dataset(src);
}

// Out-of-range thresholds are a flag problem, not a data problem.
Thresholds thresholds(const Common& c) {
    try {
        return Thresholds(c.theta1, c.theta2);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out || !(out << text)) throw ConfigError("cannot write '" + path + "'");
}

ExperimentConfig base_config(const Common& c) {
    ExperimentConfig cfg;
    cfg.theta1 = c.theta1;
    cfg.theta2 = c.theta2;
    cfg.k = c.k;
    cfg.seed_a = SeedASpec::parse(c.seed_a);
    cfg.rng_seed = c.rng_seed;
    return cfg;
}

int row_exit_code(const RunReport& report) {
    int code = kOk;
    for (const RunRow& row : report.rows) {
        if (row.status == RunRow::Status::CapExceeded) code = std::max(code, static_cast<int>(kCap));
        if (row.status == RunRow::Status::Error) code = std::max(code, static_cast<int>(kData));
    }
    return code;
}

int run_report(const Common& c, const ExperimentConfig& cfg) {
    const ReportFormat format = parse_report_format(c.format);
    const RunReport report = run_experiment(load(c), cfg);
    write_output(c.out, emit_report(report, format));
    return row_exit_code(report);
}

std::vector<NodeId> resolve_labels(const WeightedDigraph& g, const std::string& list) {
    std::vector<NodeId> ids;
    if (list.empty()) return ids;
    std::stringstream ss(list);
    std::string label;
    while (std::getline(ss, label, ',')) {
        const auto id = g.find(label);
        if (!id) throw ConfigError("label '" + label + "' is not a node of the graph");
        ids.push_back(*id);
    }
    return ids;
}

int run_diffuse(const Common& c, const std::string& seed_b) {
    const ReportFormat format = parse_report_format(c.format);
    const Dataset d = load(c);
    const Thresholds thr = thresholds(c);
    const std::vector<NodeId> seeds_a = resolve_seeds(d.graph, SeedASpec::parse(c.seed_a), c.k);
    const std::vector<NodeId> seeds_b = resolve_labels(d.graph, seed_b);
    for (NodeId u : seeds_b) {
        if (std::find(seeds_a.begin(), seeds_a.end(), u) != seeds_a.end())
            throw ConfigError("node '" + std::string(d.graph.label(u)) + "' is in both seed sets");
    }
    const DiffusionResult r = diffuse(d.graph, thr, seeds_a, seeds_b);

    const auto labels = [&](Side side) {
        std::vector<std::string> out;
        for (NodeId u : influenced_set(r, side)) out.emplace_back(d.graph.label(u));
        return out;
    };
    std::string text;
    if (format == ReportFormat::Json) {
        nlohmann::ordered_json j;
        j["dataset"] = d.name;
        j["n"] = d.graph.num_nodes();
        j["m"] = d.graph.num_arcs();
        j["theta1"] = c.theta1;
        j["theta2"] = c.theta2;
        j["rounds"] = r.rounds;
        j["sigma_A"] = r.sigma_a;
        j["sigma_B"] = r.sigma_b;
        j["final_A"] = labels(Side::A);
        j["final_B"] = labels(Side::B);
        text = j.dump(2) + "\n";
    } else {
        std::ostringstream out;
        out << "label,status\n";
        for (NodeId u = 0; u < d.graph.num_nodes(); ++u) {
            const NodeStatus s = r.final_state[u];
            out << d.graph.label(u) << ','
                << (s == NodeStatus::FinalA ? "A" : s == NodeStatus::FinalB ? "B" : "inactive") << '\n';
        }
        text = out.str();
    }
    write_output(c.out, text);
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"User-driven competitive influence maximization toolkit"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    Common diffuse_opts, lodbh_opts, csbga_opts, exact_opts, lp_opts, bench_opts;

    auto* diffuse_cmd = app.add_subcommand("diffuse", "run the two-stage diffusion for given seed sets");
    add_common(diffuse_cmd, diffuse_opts);
    std::string seed_b;
    diffuse_cmd->add_option("--seed-b", seed_b, "comma-separated labels of S_B");

    auto* lodbh_cmd = app.add_subcommand("lodbh", "select S_B with the local out-degree heuristic");
    add_common(lodbh_cmd, lodbh_opts);

    GAConfig ga;
    std::size_t repetitions = 5;
    auto* csbga_cmd = app.add_subcommand("csbga", "select S_B with the community-seeded genetic algorithm");
    add_common(csbga_cmd, csbga_opts);
    csbga_cmd->add_option("--population", ga.population_size)->capture_default_str();
    csbga_cmd->add_option("--generations", ga.generations)->capture_default_str();
    csbga_cmd->add_option("--tournament", ga.tournament_size)->capture_default_str();
    csbga_cmd->add_option("--repetitions", repetitions)->capture_default_str();

    std::uint64_t cap = BruteForceOptions{}.combination_cap;
    auto* exact_cmd = app.add_subcommand("exact", "exhaustive search over all k-subsets");
    add_common(exact_cmd, exact_opts);
    exact_cmd->add_option("--cap", cap, "maximum number of subsets")->capture_default_str();

    MilpOptions milp;
    auto* lp_cmd = app.add_subcommand("emit-lp", "write the round-indexed binary program in LP format");
    add_common(lp_cmd, lp_opts);
    lp_cmd->add_option("--horizon", milp.horizon, "number of rounds (0 = n)")->capture_default_str();
    lp_cmd->add_option("--node-cap", milp.node_cap)->capture_default_str();

    std::string algorithms = "lodbh,csbga,random-baseline";
    bool no_timing = false;
    GAConfig bench_ga;
    std::size_t bench_reps = 5;
    std::uint64_t bench_cap = BruteForceOptions{}.combination_cap;
    auto* bench_cmd = app.add_subcommand("bench", "compare several algorithms on one dataset");
    add_common(bench_cmd, bench_opts);
    bench_cmd->add_option("--algorithms", algorithms, "comma list of lodbh, csbga, exact, random-baseline")
        ->capture_default_str();
    bench_cmd->add_option("--repetitions", bench_reps)->capture_default_str();
    bench_cmd->add_option("--population", bench_ga.population_size)->capture_default_str();
    bench_cmd->add_option("--generations", bench_ga.generations)->capture_default_str();
    bench_cmd->add_option("--cap", bench_cap, "exact search subset cap")->capture_default_str();
    bench_cmd->add_flag("--no-timing", no_timing, "report zero times for reproducible output");

    PlantedPartitionSpec spec;
    std::string gen_out;
    auto* gen_cmd = app.add_subcommand("generate", "write a planted-partition edge list");
    gen_cmd->add_option("--nodes", spec.nodes)->capture_default_str();
    gen_cmd->add_option("--edges", spec.undirected_edges, "undirected pairs")->capture_default_str();
    gen_cmd->add_option("--communities", spec.communities)->capture_default_str();
    gen_cmd->add_option("--intra", spec.intra_fraction, "fraction of pairs inside a block")->capture_default_str();
    gen_cmd->add_option("--rng-seed", spec.seed)->capture_default_str();
    gen_cmd->add_option("--out", gen_out, "output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        if (*diffuse_cmd) return run_diffuse(diffuse_opts, seed_b);
        if (*lodbh_cmd) {
            ExperimentConfig cfg = base_config(lodbh_opts);
            cfg.algorithms = {Algorithm::Lodbh};
            return run_report(lodbh_opts, cfg);
        }
        if (*csbga_cmd) {
            ExperimentConfig cfg = base_config(csbga_opts);
            cfg.algorithms = {Algorithm::Csbga};
            cfg.ga = ga;
            cfg.repetitions = repetitions;
            return run_report(csbga_opts, cfg);
        }
        if (*exact_cmd) {
            ExperimentConfig cfg = base_config(exact_opts);
            cfg.algorithms = {Algorithm::Exact};
            cfg.exact.combination_cap = cap;
            return run_report(exact_opts, cfg);
        }
        if (*lp_cmd) {
            const Dataset d = load(lp_opts);
            const Thresholds thr = thresholds(lp_opts);
            const auto seeds_a = resolve_seeds(d.graph, SeedASpec::parse(lp_opts.seed_a), lp_opts.k);
            std::ostringstream text;
            const EmissionSummary s = emit_milp(d.graph, thr, seeds_a, lp_opts.k, text, milp);
            write_output(lp_opts.out, text.str());
            std::cerr << "variables " << s.variables << " (auxiliary " << s.auxiliary << "), constraints "
                      << s.constraints << ", approximate gaps " << s.approximate_gaps << '\n';
            return kOk;
        }
        if (*bench_cmd) {
            ExperimentConfig cfg = base_config(bench_opts);
            cfg.algorithms.clear();
            std::stringstream ss(algorithms);
            std::string name;
            while (std::getline(ss, name, ',')) cfg.algorithms.push_back(parse_algorithm(name));
            cfg.repetitions = bench_reps;
            cfg.ga.population_size = bench_ga.population_size;
            cfg.ga.generations = bench_ga.generations;
            cfg.exact.combination_cap = bench_cap;
            cfg.record_timing = !no_timing;
            const ReportFormat format = parse_report_format(bench_opts.format);
            const RunReport report = run_experiment(load(bench_opts), cfg);
            write_output(bench_opts.out, emit_report(report, format));
            return kOk;  // failed rows are part of the comparison
        }
        if (*gen_cmd) {
            std::ostringstream text;
            write_edge_list(planted_partition(spec), text);
            write_output(gen_out, text.str());
            return kOk;
        }
    } catch (const CapExceededError& e) {
        std::cerr << "udcim: " << e.what() << '\n';
        return kCap;
    } catch (const ConfigError& e) {
        std::cerr << "udcim: " << e.what() << '\n';
        return kConfig;
    } catch (const PreconditionError& e) {
        std::cerr << "udcim: " << e.what() << '\n';
        return kConfig;
    } catch (const Error& e) {
        std::cerr << "udcim: " << e.what() << '\n';
        return kData;
    }
    return kOk;
}
