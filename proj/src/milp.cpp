#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "text_util.hpp"
#include "udcim/errors.hpp"
#include "udcim/exact.hpp"

namespace udcim {

namespace {

// Variable kinds in per-block declaration order. The order places every
// variable after the ones it is derived from.
enum Kind : std::size_t { kT1, kT2, kT3, kT4, kT, kA, kB, kCoreKinds };
constexpr const char* kCoreNames[kCoreKinds] = {"T1", "T2", "T3", "T4", "T", "A", "B"};

// Fallback margin below a threshold when subset sums are not enumerated.
constexpr double kFallbackGap = 1e-7;

struct Indicator {
    double below;  // largest achievable value strictly below the threshold
    bool exact;
};

// Achievable values of Σ c_i y_i where each neighbor contributes one of
// {0, w} (one-sided) or {-w, 0, w} (difference of the two sides).
Indicator largest_below(const std::vector<double>& weights, bool signed_terms, double threshold, double lmin,
                        std::size_t degree_cap) {
    if (threshold <= lmin) return {lmin - 1.0, true};
    if (weights.size() > degree_cap) return {threshold - kFallbackGap, false};
    std::vector<double> sums{0.0}, next;
    for (double w : weights) {
        next.clear();
        for (double s : sums) {
            next.push_back(s);
            next.push_back(s + w);
            if (signed_terms) next.push_back(s - w);
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        sums.swap(next);
    }
    auto it = std::lower_bound(sums.begin(), sums.end(), threshold);
    return {*std::prev(it), true};
}

class Builder {
public:
    Builder(const WeightedDigraph& graph, const Thresholds& thresholds, std::span<const NodeId> seeds_a,
            std::size_t k, const MilpOptions& options)
        : graph_(graph), thr_(thresholds), k_(k), options_(options) {
        model_.nodes = graph.num_nodes();
        model_.horizon = options.horizon == 0 ? graph.num_nodes() : options.horizon;
        in_a_.assign(graph.num_nodes(), 0);
        for (NodeId u : seeds_a) {
            if (u >= graph.num_nodes()) throw PreconditionError("seed " + std::to_string(u) + " out of range");
            in_a_[u] = 1;
        }
        seeds_a_count_ = static_cast<std::size_t>(std::count(in_a_.begin(), in_a_.end(), 1));
        core_.assign((model_.horizon + 1) * model_.nodes * kCoreKinds, 0);
    }

    MilpModel build() {
        const std::size_t n = model_.nodes;
        for (std::size_t r = 0; r <= model_.horizon; ++r) {
            for (NodeId u = 0; u < n; ++u) {
                if (r == 0) {
                    seed_block(u);
                } else if (in_a_[u]) {
                    fixed_a_block(u, r);
                } else {
                    round_block(u, r);
                }
            }
        }
        budgets();
        objective();
        return std::move(model_);
    }

private:
    std::string suffix(std::size_t u, std::size_t r) const {
        return "_" + std::to_string(u) + "_" + std::to_string(r);
    }

    std::size_t declare(std::string name, std::size_t u, std::size_t r) {
        model_.variables.push_back({std::move(name), u, r});
        return model_.variables.size() - 1;
    }
    std::size_t declare_core(Kind kind, std::size_t u, std::size_t r) {
        const std::size_t id = declare(kCoreNames[kind] + suffix(u, r), u, r);
        core_[(r * model_.nodes + u) * kCoreKinds + kind] = id;
        return id;
    }
    std::size_t declare_aux(const std::string& tag, std::size_t u, std::size_t r) {
        ++model_.auxiliary_count;
        return declare("z_" + tag + suffix(u, r), u, r);
    }
    std::size_t var(Kind kind, std::size_t u, std::size_t r) const {
        return core_[(r * model_.nodes + u) * kCoreKinds + kind];
    }

    void add(std::string name, std::vector<LinearTerm> terms, Sense sense, double rhs) {
        std::erase_if(terms, [](const LinearTerm& t) { return t.coef == 0.0; });
        if (terms.empty()) {
            const bool ok = sense == Sense::LessEqual ? 0.0 <= rhs : sense == Sense::GreaterEqual ? 0.0 >= rhs : rhs == 0.0;
            if (!ok) throw Error("internal: constant constraint " + name + " is infeasible");
            return;
        }
        model_.constraints.push_back({std::move(name), std::move(terms), sense, rhs});
    }

    void fix(std::size_t v, double value) {
        add("fix_" + model_.variables[v].name, {{v, 1.0}}, Sense::Equal, value);
    }

    // x = [L >= c] in both directions.
    void indicator(const std::string& tag, std::size_t u, std::size_t r, std::size_t x,
                   std::vector<LinearTerm> terms, const std::vector<double>& neighbor_weights, bool signed_terms,
                   double threshold) {
        double total = 0.0;
        for (double w : neighbor_weights) total += w;
        const double lmin = signed_terms ? -total : 0.0;
        const double lmax = total;
        const Indicator gap = largest_below(neighbor_weights, signed_terms, threshold, lmin, options_.exact_gap_degree);
        if (!gap.exact) ++model_.approximate_gaps;

        auto up = terms;
        up.push_back({x, -(threshold - lmin)});
        if (threshold - lmin > 0.0) add("up_" + tag + suffix(u, r), std::move(up), Sense::GreaterEqual, lmin);
        auto down = std::move(terms);
        down.push_back({x, -(lmax - gap.below)});
        if (lmax - gap.below > 0.0) add("dn_" + tag + suffix(u, r), std::move(down), Sense::LessEqual, gap.below);
    }

    // z = x AND y, where x and y are linear 0/1 expressions.
    void conjunction(const std::string& tag, std::size_t u, std::size_t r, std::size_t z,
                     const std::vector<LinearTerm>& x, double x_const, const std::vector<LinearTerm>& y) {
        auto le_x = x;
        le_x.push_back({z, -1.0});
        add("and1_" + tag + suffix(u, r), le_x, Sense::GreaterEqual, -x_const);
        auto le_y = y;
        le_y.push_back({z, -1.0});
        add("and2_" + tag + suffix(u, r), le_y, Sense::GreaterEqual, 0.0);
        std::vector<LinearTerm> ge{{z, 1.0}};
        for (auto t : x) ge.push_back({t.var, -t.coef});
        for (auto t : y) ge.push_back({t.var, -t.coef});
        add("and3_" + tag + suffix(u, r), ge, Sense::GreaterEqual, x_const - 1.0);
    }

    void seed_block(NodeId u) {
        const std::size_t t1 = declare_core(kT1, u, 0), t2 = declare_core(kT2, u, 0);
        const std::size_t t3 = declare_core(kT3, u, 0), t4 = declare_core(kT4, u, 0);
        const std::size_t t = declare_core(kT, u, 0), a = declare_core(kA, u, 0), b = declare_core(kB, u, 0);
        for (std::size_t v : {t1, t2, t3, t4}) fix(v, 0.0);
        if (in_a_[u]) {
            fix(a, 1.0);
            fix(b, 0.0);
        }
        add("link" + suffix(u, 0), {{a, 1.0}, {b, 1.0}, {t, -1.0}}, Sense::Equal, 0.0);
    }

    void fixed_a_block(NodeId u, std::size_t r) {
        const std::size_t t1 = declare_core(kT1, u, r), t2 = declare_core(kT2, u, r);
        const std::size_t t3 = declare_core(kT3, u, r), t4 = declare_core(kT4, u, r);
        const std::size_t t = declare_core(kT, u, r), a = declare_core(kA, u, r), b = declare_core(kB, u, r);
        for (std::size_t v : {t1, t2, t3, t4}) fix(v, 0.0);
        fix(a, 1.0);
        fix(b, 0.0);
        add("link" + suffix(u, r), {{a, 1.0}, {b, 1.0}, {t, -1.0}}, Sense::Equal, 0.0);
    }

    void round_block(NodeId u, std::size_t r) {
        const Tendency tend = graph_.tendency(u);
        std::vector<LinearTerm> ka, kb, kab, diff_ab;
        std::vector<double> weights;
        for (const Neighbor& nb : graph_.in_neighbors(u)) {
            weights.push_back(nb.weight);
            ka.push_back({var(kA, nb.node, r - 1), nb.weight});
            kb.push_back({var(kB, nb.node, r - 1), nb.weight});
        }
        kab = ka;
        kab.insert(kab.end(), kb.begin(), kb.end());
        diff_ab = ka;
        for (auto t : kb) diff_ab.push_back({t.var, -t.coef});
        std::vector<LinearTerm> diff_ba;
        for (auto t : diff_ab) diff_ba.push_back({t.var, -t.coef});

        const std::size_t t1 = declare_core(kT1, u, r), t2 = declare_core(kT2, u, r);
        const std::size_t t3 = declare_core(kT3, u, r), t4 = declare_core(kT4, u, r);
        const std::size_t cmp = declare_aux("cmp", u, r);
        std::size_t both = 0;
        if (tend != Tendency::Neutral) both = declare_aux("and", u, r);
        const std::size_t t = declare_core(kT, u, r);
        const std::size_t fresh = declare_aux("new", u, r);
        const std::size_t a = declare_core(kA, u, r), b = declare_core(kB, u, r);
        const std::size_t t_prev = var(kT, u, r - 1), a_prev = var(kA, u, r - 1), b_prev = var(kB, u, r - 1);

        // Temporary activation indicators and the commitment rule.
        std::vector<std::size_t> triggers;
        std::size_t gate = 0;
        switch (tend) {
        case Tendency::A:
            indicator("T1", u, r, t1, ka, weights, false, thr_.theta1());
            indicator("T2", u, r, t2, kb, weights, false, thr_.opposing());
            fix(t3, 0.0);
            fix(t4, 0.0);
            indicator("cmp", u, r, cmp, diff_ba, weights, true, 0.0);  // K_B >= K_A
            conjunction("and", u, r, both, {{cmp, 1.0}}, 0.0, {{t2, 1.0}});
            triggers = {t1, t2};
            gate = both;
            break;
        case Tendency::B:
            indicator("T3", u, r, t3, kb, weights, false, thr_.theta1());
            indicator("T4", u, r, t4, ka, weights, false, thr_.opposing());
            fix(t1, 0.0);
            fix(t2, 0.0);
            indicator("cmp", u, r, cmp, diff_ab, weights, true, 0.0);  // K_A >= K_B
            conjunction("and", u, r, both, {{cmp, 1.0}}, 0.0, {{t4, 1.0}});
            triggers = {t3, t4};
            gate = both;
            break;
        case Tendency::Neutral:
            indicator("T1", u, r, t1, kab, weights, false, thr_.theta1());
            fix(t2, 0.0);
            fix(t3, 0.0);
            fix(t4, 0.0);
            indicator("cmp", u, r, cmp, diff_ab, weights, true, 0.0);  // K_A >= K_B
            triggers = {t1};
            gate = cmp;
            break;
        }

        // T_r = T_{r-1} OR any trigger.
        add("keep" + suffix(u, r), {{t, 1.0}, {t_prev, -1.0}}, Sense::GreaterEqual, 0.0);
        std::vector<LinearTerm> upper{{t, 1.0}, {t_prev, -1.0}};
        for (std::size_t trig : triggers) {
            add("trig_" + model_.variables[trig].name, {{t, 1.0}, {trig, -1.0}}, Sense::GreaterEqual, 0.0);
            upper.push_back({trig, -1.0});
        }
        add("or" + suffix(u, r), upper, Sense::LessEqual, 0.0);

        // fresh = (T_r - T_{r-1}) AND gate; a fresh commitment goes to the gated side.
        conjunction("new", u, r, fresh, {{t, 1.0}, {t_prev, -1.0}}, 0.0, {{gate, 1.0}});
        if (tend == Tendency::A) {
            add("step" + suffix(u, r), {{b, 1.0}, {b_prev, -1.0}, {fresh, -1.0}}, Sense::Equal, 0.0);
        } else {
            add("step" + suffix(u, r), {{a, 1.0}, {a_prev, -1.0}, {fresh, -1.0}}, Sense::Equal, 0.0);
        }
        add("link" + suffix(u, r), {{a, 1.0}, {b, 1.0}, {t, -1.0}}, Sense::Equal, 0.0);
    }

    void budgets() {
        std::vector<LinearTerm> a_terms, b_terms;
        for (NodeId u = 0; u < model_.nodes; ++u) {
            a_terms.push_back({var(kA, u, 0), 1.0});
            if (!in_a_[u]) b_terms.push_back({var(kB, u, 0), 1.0});
        }
        add("budget_A", a_terms, Sense::LessEqual, static_cast<double>(seeds_a_count_));
        if (!b_terms.empty()) add("budget_B", b_terms, Sense::LessEqual, static_cast<double>(k_));
    }

    void objective() {
        const std::size_t R = model_.horizon;
        const double eps = 1.0 / (2.0 * static_cast<double>(model_.nodes));
        for (NodeId u = 0; u < model_.nodes; ++u) {
            if (!in_a_[u]) model_.objective.push_back({var(kB, u, R), 1.0});
        }
        for (NodeId u = 0; u < model_.nodes; ++u) model_.objective.push_back({var(kA, u, R), eps});
    }

    const WeightedDigraph& graph_;
    const Thresholds& thr_;
    std::size_t k_;
    const MilpOptions& options_;
    MilpModel model_;
    std::vector<char> in_a_;
    std::size_t seeds_a_count_ = 0;
    std::vector<std::size_t> core_;
};

void write_terms(std::ostream& out, const std::vector<LinearTerm>& terms, const MilpModel& model) {
    std::size_t on_line = 0;
    for (const LinearTerm& t : terms) {
        if (on_line == 8) {
            out << "\n   ";
            on_line = 0;
        }
        out << (t.coef < 0.0 ? " - " : " + ") << detail::format_double(std::abs(t.coef)) << ' '
            << model.variables[t.var].name;
        ++on_line;
    }
}

const char* sense_text(Sense s) {
    switch (s) {
    case Sense::LessEqual: return "<=";
    case Sense::GreaterEqual: return ">=";
    case Sense::Equal: return "=";
    }
    return "?";
}

} // namespace

MilpModel build_milp(const WeightedDigraph& graph, const Thresholds& thresholds, std::span<const NodeId> seeds_a,
                     std::size_t k, const MilpOptions& options) {
    if (graph.num_nodes() == 0) throw PreconditionError("emit_milp on an empty graph");
    if (graph.num_nodes() > options.node_cap)
        throw CapExceededError("emit_milp: " + std::to_string(graph.num_nodes()) + " nodes exceed the cap of " +
                                   std::to_string(options.node_cap),
                               graph.num_nodes(), options.node_cap);
    if (!graph.weights_assigned()) throw PreconditionError("emit_milp requires assigned arc weights");
    return Builder(graph, thresholds, seeds_a, k, options).build();
}

void write_lp(const MilpModel& model, std::ostream& out) {
    out << "\\ UDCIM round model: nodes " << model.nodes << ", horizon " << model.horizon << "\n";
    out << "\\ variables " << model.variables.size() << " (auxiliary " << model.auxiliary_count << "), constraints "
        << model.constraints.size() << "\n";
    out << "Maximize\n obj:";
    write_terms(out, model.objective, model);
    out << "\nSubject To\n";
    for (const Constraint& c : model.constraints) {
        out << ' ' << c.name << ':';
        write_terms(out, c.terms, model);
        out << ' ' << sense_text(c.sense) << ' ' << detail::format_double(c.rhs) << '\n';
    }
    out << "Binary\n";
    for (const MilpVariable& v : model.variables) out << ' ' << v.name << '\n';
    out << "End\n";
    if (!out) throw Error("failed to write LP model");
}

EmissionSummary emit_milp(const WeightedDigraph& graph, const Thresholds& thresholds, std::span<const NodeId> seeds_a,
                          std::size_t k, std::ostream& out, const MilpOptions& options) {
    const MilpModel model = build_milp(graph, thresholds, seeds_a, k, options);
    write_lp(model, out);
    return {model.variables.size(), model.auxiliary_count, model.constraints.size(), model.approximate_gaps};
}

std::map<std::string, int> trace_assignment(const MilpModel& model, const WeightedDigraph& graph,
                                            const Thresholds& thresholds, std::span<const NodeId> seeds_a,
                                            std::span<const NodeId> seeds_b) {
    const std::size_t n = graph.num_nodes();
    std::vector<ActivationState> states;
    ActivationState initial(n, NodeStatus::Inactive);
    for (NodeId u : seeds_a) initial[u] = NodeStatus::FinalA;
    for (NodeId u : seeds_b) initial[u] = NodeStatus::FinalB;
    states.push_back(initial);
    diffuse(graph, thresholds, seeds_a, seeds_b,
            [&](std::size_t, const ActivationState& s) { states.push_back(s); });
    while (states.size() <= model.horizon) states.push_back(states.back());

    std::vector<char> in_a(n, 0);
    for (NodeId u : seeds_a) in_a[u] = 1;

    std::map<std::string, int> values;
    for (const MilpVariable& v : model.variables) {
        const std::size_t u = v.node, r = v.round;
        const NodeStatus now = states[r][u];
        int value = 0;
        const std::string& name = v.name;
        const auto starts = [&](const char* prefix) { return name.rfind(prefix, 0) == 0; };
        if (starts("A_")) {
            value = now == NodeStatus::FinalA;
        } else if (starts("B_")) {
            value = now == NodeStatus::FinalB;
        } else if (starts("T_")) {
            value = now != NodeStatus::Inactive;
        } else if (r == 0 || in_a[u]) {
            value = 0;
        } else {
            const IncomingInfluence in = incoming_influence(graph, states[r - 1], static_cast<NodeId>(u));
            const Tendency tend = graph.tendency(static_cast<NodeId>(u));
            const bool prev_final = states[r - 1][u] != NodeStatus::Inactive;
            const bool fresh = !prev_final && now != NodeStatus::Inactive;
            bool cmp = false, gate = false;
            if (tend == Tendency::A) {
                cmp = in.from_b >= in.from_a;
                gate = cmp && in.from_b >= thresholds.opposing();
            } else if (tend == Tendency::B) {
                cmp = in.from_a >= in.from_b;
                gate = cmp && in.from_a >= thresholds.opposing();
            } else {
                cmp = in.from_a >= in.from_b;
                gate = cmp;
            }
            if (starts("T1_")) {
                value = tend == Tendency::A ? in.from_a >= thresholds.theta1()
                        : tend == Tendency::Neutral ? in.from_a + in.from_b >= thresholds.theta1()
                                                    : 0;
            } else if (starts("T2_")) {
                value = tend == Tendency::A && in.from_b >= thresholds.opposing();
            } else if (starts("T3_")) {
                value = tend == Tendency::B && in.from_b >= thresholds.theta1();
            } else if (starts("T4_")) {
                value = tend == Tendency::B && in.from_a >= thresholds.opposing();
            } else if (starts("z_cmp_")) {
                value = cmp;
            } else if (starts("z_and_")) {
                value = gate;
            } else if (starts("z_new_")) {
                value = fresh && gate;
            }
        }
        values[name] = value;
    }
    return values;
}

} // namespace udcim
