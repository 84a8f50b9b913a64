#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <limits>
#include <sstream>
#include <string>
#include <tuple>

#include "text_util.hpp"
#include "udcim/errors.hpp"
#include "udcim/exact.hpp"

namespace udcim {

namespace {

constexpr double kTolerance = 1e-9;

enum class Tok { Ident, Number, Plus, Minus, Colon, Le, Ge, Eq, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
};

bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || std::string_view("_!\"#$%&()/,;?@`'{}|~").find(c) != std::string_view::npos;
}
bool ident_char(char c) {
    return ident_start(c) || std::isdigit(static_cast<unsigned char>(c)) || c == '.';
}

std::vector<Token> lex(std::istream& in) {
    std::vector<Token> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto cut = line.find('\\'); cut != std::string::npos) line.erase(cut);
        std::size_t i = 0;
        while (i < line.size()) {
            const char c = line[i];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++i;
            } else if (c == '+') {
                out.push_back({Tok::Plus, "+", lineno});
                ++i;
            } else if (c == '-') {
                out.push_back({Tok::Minus, "-", lineno});
                ++i;
            } else if (c == ':') {
                out.push_back({Tok::Colon, ":", lineno});
                ++i;
            } else if (c == '<' || c == '>' || c == '=') {
                std::size_t j = i + 1;
                while (j < line.size() && (line[j] == '<' || line[j] == '>' || line[j] == '=')) ++j;
                const std::string op = line.substr(i, j - i);
                Tok kind;
                if (op == "<=" || op == "=<" || op == "<") kind = Tok::Le;
                else if (op == ">=" || op == "=>" || op == ">") kind = Tok::Ge;
                else if (op == "=") kind = Tok::Eq;
                else throw ParseError(lineno, "unknown operator '" + op + "'");
                out.push_back({kind, op, lineno});
                i = j;
            } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                std::size_t j = i;
                while (j < line.size() && (std::isdigit(static_cast<unsigned char>(line[j])) || line[j] == '.')) ++j;
                if (j < line.size() && (line[j] == 'e' || line[j] == 'E')) {
                    std::size_t k = j + 1;
                    if (k < line.size() && (line[k] == '+' || line[k] == '-')) ++k;
                    if (k < line.size() && std::isdigit(static_cast<unsigned char>(line[k]))) {
                        j = k;
                        while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
                    }
                }
                out.push_back({Tok::Number, line.substr(i, j - i), lineno});
                i = j;
            } else if (ident_start(c)) {
                std::size_t j = i;
                while (j < line.size() && ident_char(line[j])) ++j;
                out.push_back({Tok::Ident, line.substr(i, j - i), lineno});
                i = j;
            } else {
                throw ParseError(lineno, std::string("unexpected character '") + c + "'");
            }
        }
    }
    out.push_back({Tok::End, "", lineno});
    return out;
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

enum class Section { None, Objective, Constraints, Binary, Done };

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    LpProgram parse() {
        Section section = Section::None;
        bool seen_objective = false, seen_constraints = false;
        while (peek().kind != Tok::End) {
            if (auto next = section_keyword()) {
                section = *next;
                if (section == Section::Objective) {
                    if (seen_objective) fail("duplicate objective section");
                    seen_objective = true;
                    parse_objective();
                    continue;
                }
                if (section == Section::Constraints) seen_constraints = true;
                if (section == Section::Done) break;
                continue;
            }
            switch (section) {
            case Section::Constraints: parse_constraint(); break;
            case Section::Binary: {
                const Token& t = take();
                if (t.kind != Tok::Ident) fail("expected a variable name in the Binary section", t.line);
                const std::size_t v = variable(t.text);
                if (std::find(program_.binaries.begin(), program_.binaries.end(), v) != program_.binaries.end())
                    fail("variable '" + t.text + "' declared binary twice", t.line);
                program_.binaries.push_back(v);
                break;
            }
            default: fail("expected a section keyword, found '" + peek().text + "'");
            }
        }
        if (section != Section::Done) fail("missing End");
        if (!seen_objective) fail("missing objective section");
        if (!seen_constraints) fail("missing Subject To section");
        take();
        while (peek().kind != Tok::End) fail("text after End");
        return std::move(program_);
    }

private:
    const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
    const Token& take() {
        const Token& t = toks_[pos_];
        if (pos_ + 1 < toks_.size()) ++pos_;
        return t;
    }
    [[noreturn]] void fail(const std::string& what, std::size_t line = 0) const {
        throw ParseError(line ? line : peek().line, what);
    }

    std::size_t variable(const std::string& name) {
        auto [it, inserted] = program_.index.emplace(name, program_.variables.size());
        if (inserted) program_.variables.push_back(name);
        return it->second;
    }

    // Recognizes a section keyword at the cursor and consumes it.
    std::optional<Section> section_keyword() {
        const Token& t = peek();
        if (t.kind != Tok::Ident) return std::nullopt;
        if (peek(1).kind == Tok::Colon) return std::nullopt;  // a label
        const std::string w = lower(t.text);
        if (w == "maximize" || w == "maximise" || w == "maximum" || w == "max") {
            take();
            program_.maximize = true;
            return Section::Objective;
        }
        if (w == "minimize" || w == "minimise" || w == "minimum" || w == "min") {
            take();
            program_.maximize = false;
            return Section::Objective;
        }
        if (w == "subject" && lower(peek(1).text) == "to") {
            take();
            take();
            return Section::Constraints;
        }
        if (w == "such" && lower(peek(1).text) == "that") {
            take();
            take();
            return Section::Constraints;
        }
        if (w == "st" || w == "s.t.") {
            take();
            return Section::Constraints;
        }
        if (w == "binary" || w == "binaries" || w == "bin") {
            take();
            return Section::Binary;
        }
        if (w == "end") {
            return Section::Done;
        }
        return std::nullopt;
    }

    bool at_section_start() {
        const std::size_t save = pos_;
        const auto kw = section_keyword();
        pos_ = save;
        return kw.has_value();
    }

    double number(const Token& t) {
        const auto v = detail::parse_double(t.text);
        if (!v) fail("malformed number '" + t.text + "'", t.line);
        return *v;
    }

    // [label:] { (+|-) [coef] var }
    std::vector<LinearTerm> linear_expression(bool stop_at_sense) {
        std::vector<LinearTerm> terms;
        bool first = true;
        for (;;) {
            const Token& t = peek();
            if (t.kind == Tok::End) break;
            if (stop_at_sense && (t.kind == Tok::Le || t.kind == Tok::Ge || t.kind == Tok::Eq)) break;
            if (!stop_at_sense && t.kind == Tok::Ident && (at_section_start() || peek(1).kind == Tok::Colon)) break;
            double sign = 1.0;
            bool had_sign = false;
            while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
                if (take().kind == Tok::Minus) sign = -sign;
                had_sign = true;
            }
            if (!first && !had_sign) fail("expected '+' or '-' between terms");
            double coef = 1.0;
            if (peek().kind == Tok::Number) coef = number(take());
            const Token& name = take();
            if (name.kind != Tok::Ident) fail("expected a variable name, found '" + name.text + "'", name.line);
            terms.push_back({variable(name.text), sign * coef});
            first = false;
        }
        return terms;
    }

    void parse_objective() {
        if (peek().kind == Tok::Ident && peek(1).kind == Tok::Colon) {
            take();
            take();
        }
        program_.objective = linear_expression(false);
    }

    void parse_constraint() {
        Constraint c;
        if (peek().kind == Tok::Ident && peek(1).kind == Tok::Colon) {
            c.name = take().text;
            take();
        } else {
            c.name = "c" + std::to_string(program_.constraints.size() + 1);
        }
        const std::size_t line = peek().line;
        c.terms = linear_expression(true);
        if (c.terms.empty()) fail("constraint '" + c.name + "' has no terms", line);
        const Token& op = take();
        switch (op.kind) {
        case Tok::Le: c.sense = Sense::LessEqual; break;
        case Tok::Ge: c.sense = Sense::GreaterEqual; break;
        case Tok::Eq: c.sense = Sense::Equal; break;
        default: fail("expected a comparison operator in '" + c.name + "'", op.line);
        }
        double sign = 1.0;
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            if (take().kind == Tok::Minus) sign = -sign;
        }
        const Token& rhs = take();
        if (rhs.kind != Tok::Number) fail("expected a numeric right-hand side in '" + c.name + "'", rhs.line);
        c.rhs = sign * number(rhs);
        program_.constraints.push_back(std::move(c));
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    LpProgram program_;
};

// (round, node) parsed from a trailing "_u_r"; names without it sort last.
std::pair<std::size_t, std::size_t> block_key(const std::string& name) {
    constexpr auto none = std::numeric_limits<std::size_t>::max();
    const auto parts = detail::split(name, '_');
    if (parts.size() < 3) return {none, none};
    const auto u = detail::parse_uint(parts[parts.size() - 2]);
    const auto r = detail::parse_uint(parts[parts.size() - 1]);
    if (!u || !r) return {none, none};
    return {static_cast<std::size_t>(*r), static_cast<std::size_t>(*u)};
}

double evaluate(const std::vector<LinearTerm>& terms, std::span<const int> values) {
    double s = 0.0;
    for (const LinearTerm& t : terms) s += t.coef * values[t.var];
    return s;
}

} // namespace

LpProgram read_lp(std::istream& in) {
    return Parser(lex(in)).parse();
}

bool satisfied(const Constraint& c, std::span<const int> values) {
    const double lhs = evaluate(c.terms, values);
    switch (c.sense) {
    case Sense::LessEqual: return lhs <= c.rhs + kTolerance;
    case Sense::GreaterEqual: return lhs >= c.rhs - kTolerance;
    case Sense::Equal: return std::abs(lhs - c.rhs) <= kTolerance;
    }
    return false;
}

LpCheckResult exhaustive_solve(const LpProgram& program, std::size_t max_block_size) {
    const std::size_t nv = program.variables.size();
    std::vector<char> binary(nv, 0);
    for (std::size_t v : program.binaries) binary[v] = 1;
    for (std::size_t v = 0; v < nv; ++v) {
        if (!binary[v]) throw PreconditionError("variable '" + program.variables[v] + "' is not binary");
    }

    // Search order: by block (round, node), then Binary-section position.
    std::vector<std::size_t> binary_pos(nv);
    for (std::size_t i = 0; i < program.binaries.size(); ++i) binary_pos[program.binaries[i]] = i;
    std::vector<std::size_t> order(nv);
    for (std::size_t v = 0; v < nv; ++v) order[v] = v;
    std::vector<std::pair<std::size_t, std::size_t>> keys(nv);
    for (std::size_t v = 0; v < nv; ++v) keys[v] = block_key(program.variables[v]);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::tie(keys[a], binary_pos[a]) < std::tie(keys[b], binary_pos[b]);
    });
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> block_sizes;
    for (const auto& key : keys) {
        if (++block_sizes[key] > max_block_size)
            throw PreconditionError("block of '" + std::to_string(key.second) + "_" + std::to_string(key.first) +
                                    "' exceeds " + std::to_string(max_block_size) + " variables");
    }

    std::vector<std::size_t> rank(nv);
    for (std::size_t i = 0; i < nv; ++i) rank[order[i]] = i;

    // Each constraint is checked when its last variable (in search order) is set.
    std::vector<std::vector<std::size_t>> due(nv + 1);
    for (std::size_t c = 0; c < program.constraints.size(); ++c) {
        std::size_t last = 0;
        bool any = false;
        for (const LinearTerm& t : program.constraints[c].terms) {
            last = std::max(last, rank[t.var]);
            any = true;
        }
        if (!any) {
            due[nv].push_back(c);
        } else {
            due[last].push_back(c);
        }
    }

    LpCheckResult result;
    std::vector<int> values(nv, 0);
    const double direction = program.maximize ? 1.0 : -1.0;
    double best_score = -std::numeric_limits<double>::infinity();

    for (std::size_t c : due[nv]) {
        if (!satisfied(program.constraints[c], values)) return result;
    }

    // Iterative depth-first search; try 0 before 1.
    std::vector<int> next(nv, 0);
    std::size_t depth = 0;
    if (nv == 0) {
        result.feasible = true;
        result.leaves = 1;
        result.objective = evaluate(program.objective, values);
        return result;
    }
    for (;;) {
        if (next[depth] > 1) {
            next[depth] = 0;
            if (depth == 0) break;
            --depth;
            continue;
        }
        const std::size_t v = order[depth];
        values[v] = next[depth]++;
        ++result.block_trials;
        bool ok = true;
        for (std::size_t c : due[depth]) {
            if (!satisfied(program.constraints[c], values)) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        if (depth + 1 < nv) {
            ++depth;
            continue;
        }
        ++result.leaves;
        const double score = direction * evaluate(program.objective, values);
        if (score > best_score + kTolerance) {
            best_score = score;
            result.feasible = true;
            result.best.assign(nv, 0);
            for (std::size_t i = 0; i < nv; ++i) result.best[i] = values[i];
            result.objective = evaluate(program.objective, values);
        }
    }
    return result;
}

} // namespace udcim
