#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gxrepair/constraints.hpp"
#include "gxrepair/error.hpp"
#include "gxrepair/graph.hpp"
#include "gxrepair/graph_json.hpp"
#include "gxrepair/weights.hpp"

namespace gxr {

// 3-CNF formula over x1..xn. A literal is +i or -i.
struct Cnf3 {
    int n = 0;
    std::vector<std::array<int, 3>> clauses;

    void validate() const
    {
        if (n < 1)
            throw InvalidArgument("formula needs at least one variable");
        if (clauses.empty())
            throw InvalidArgument("formula needs at least one clause");
        for (const auto& c : clauses)
            for (int l : c)
                if (l == 0 || std::abs(l) > n)
                    throw InvalidArgument("literal " + std::to_string(l) + " out of range for " + std::to_string(n) +
                                          " variables");
    }

    bool holds(std::uint32_t assignment) const
    {
        for (const auto& c : clauses) {
            bool sat = false;
            for (int l : c) {
                const bool v = (assignment >> (std::abs(l) - 1)) & 1u;
                if ((l > 0) == v) {
                    sat = true;
                    break;
                }
            }
            if (!sat)
                return false;
        }
        return true;
    }

    std::string to_dimacs() const
    {
        std::ostringstream os;
        os << "p cnf " << n << ' ' << clauses.size() << '\n';
        for (const auto& c : clauses)
            os << c[0] << ' ' << c[1] << ' ' << c[2] << " 0\n";
        return os.str();
    }

    friend bool operator==(const Cnf3&, const Cnf3&) = default;
};

namespace detail {

inline LoadError dimacs_error(std::size_t line, std::size_t col, const std::string& msg) { return LoadError(msg, line, col); }

} // namespace detail

// DIMACS CNF. Clauses shorter than three literals are padded by repeating
// their last literal when `pad` is set; every other length is an error.
inline Cnf3 parse_dimacs(const std::string& text, bool pad = false)
{
    Cnf3 f;
    bool header = false;
    long declared = 0;
    std::vector<int> cur;
    std::size_t cur_line = 0;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;

    auto finish = [&](std::size_t ln) {
        if (cur.empty())
            throw detail::dimacs_error(ln, 1, "empty clause");
        if (cur.size() > 3 || (cur.size() < 3 && !pad))
            throw detail::dimacs_error(ln, 1,
                            "clause has " + std::to_string(cur.size()) + " literals; expected 3" +
                                (cur.size() < 3 ? " (use --pad to repeat the last literal)" : ""));
        while (cur.size() < 3)
            cur.push_back(cur.back());
        f.clauses.push_back({cur[0], cur[1], cur[2]});
        cur.clear();
    };

    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok == "c")
            continue;
        if (tok == "%")
            break;
        if (tok == "p") {
            std::string fmt;
            long nv = -1, nc = -1;
            if (header)
                throw detail::dimacs_error(lineno, 1, "duplicate problem line");
            if (!(ls >> fmt >> nv >> nc) || fmt != "cnf" || nv < 1 || nc < 0 || nv > 1'000'000)
                throw detail::dimacs_error(lineno, 1, "malformed problem line; expected 'p cnf <vars> <clauses>'");
            header = true;
            f.n = static_cast<int>(nv);
            declared = nc;
            continue;
        }
        if (!header)
            throw detail::dimacs_error(lineno, 1, "clause before the problem line");
        ls.clear();
        ls.str(line);
        while (ls >> tok) {
            char* end = nullptr;
            const long v = std::strtol(tok.c_str(), &end, 10);
            if (*end != '\0')
                throw detail::dimacs_error(lineno, 1, "bad literal '" + tok + "'");
            if (v == 0) {
                finish(cur_line);
                continue;
            }
            if (std::labs(v) > f.n)
                throw detail::dimacs_error(lineno, 1, "literal " + tok + " exceeds declared variable count");
            if (cur.empty())
                cur_line = lineno;
            cur.push_back(static_cast<int>(v));
        }
    }
    if (!header)
        throw detail::dimacs_error(lineno + 1, 1, "missing problem line");
    if (!cur.empty())
        finish(cur_line);
    if (static_cast<long>(f.clauses.size()) != declared)
        throw detail::dimacs_error(lineno + 1, 1,
                        "problem line declares " + std::to_string(declared) + " clauses, found " +
                            std::to_string(f.clauses.size()));
    f.validate();
    return f;
}

inline Cnf3 load_dimacs(const std::string& path, bool pad = false) { return parse_dimacs(detail::read_file(path), pad); }

// Satisfying assignment (bit i-1 = value of xi) by trying all 2^n.
inline std::optional<std::uint32_t> sat_assignment(const Cnf3& f)
{
    f.validate();
    if (f.n > 20)
        throw InvalidArgument("brute-force SAT is capped at 20 variables");
    for (std::uint32_t a = 0; a < (1u << f.n); ++a)
        if (f.holds(a))
            return a;
    return std::nullopt;
}

inline bool sat_bruteforce(const Cnf3& f) { return sat_assignment(f).has_value(); }

// Every 3-CNF with 1..n_max variables and 1..m_max clauses, clauses and
// formulas taken as sorted multisets, so each (n, clause multiset) occurs once.
inline std::vector<Cnf3> all_cnf3(int n_max, int m_max)
{
    std::vector<Cnf3> out;
    for (int n = 1; n <= n_max; ++n) {
        std::vector<int> lits;
        for (int v = 1; v <= n; ++v) {
            lits.push_back(v);
            lits.push_back(-v);
        }
        std::vector<std::array<int, 3>> cls;
        for (std::size_t a = 0; a < lits.size(); ++a)
            for (std::size_t b = a; b < lits.size(); ++b)
                for (std::size_t c = b; c < lits.size(); ++c)
                    cls.push_back({lits[a], lits[b], lits[c]});
        for (int m = 1; m <= m_max; ++m) {
            std::vector<std::size_t> idx(static_cast<std::size_t>(m), 0);
            for (;;) {
                Cnf3 f;
                f.n = n;
                for (auto i : idx)
                    f.clauses.push_back(cls[i]);
                out.push_back(std::move(f));
                // next non-decreasing index sequence
                std::size_t k = idx.size();
                while (k > 0 && idx[k - 1] == cls.size() - 1)
                    --k;
                if (k == 0)
                    break;
                ++idx[k - 1];
                for (std::size_t j = k; j < idx.size(); ++j)
                    idx[j] = idx[k - 1];
            }
        }
    }
    return out;
}

struct Instance {
    DataGraph graph;
    std::vector<std::string> constraint_lines;
    std::vector<Constraint> constraints;
    std::optional<WeightFn> weights;
    std::optional<Weight> k;

    std::string constraint_text() const
    {
        std::string s;
        for (const auto& l : constraint_lines)
            s += l + "\n";
        return s;
    }

    nlohmann::ordered_json to_json() const
    {
        nlohmann::ordered_json j;
        j["graph"] = graph_to_json(graph);
        j["constraints"] = constraint_lines;
        if (weights)
            j["weights"] = weights->to_json();
        if (k)
            j["k"] = *k;
        return j;
    }
};

namespace detail {

inline Instance make_instance(DataGraph g, std::vector<std::string> lines)
{
    std::string text;
    for (const auto& l : lines)
        text += l + "\n";
    std::vector<Constraint> r = parse_constraints(text, g.alphabet());
    return Instance{std::move(g), std::move(lines), std::move(r), std::nullopt, std::nullopt};
}

inline bool has_literal(const std::array<int, 3>& c, int l)
{
    return c[0] == l || c[1] == l || c[2] == l;
}

inline std::string idx(const char* prefix, int i) { return prefix + std::to_string(i); }

} // namespace detail

// Boolean nodes bot_i/top_i, clause nodes c_j; nonempty subset repairs select
// one boolean node per variable and keep a needs edge of every clause.
inline Instance gen_subset_path_instance(const Cnf3& f)
{
    f.validate();
    using detail::idx;
    const int n = f.n, m = static_cast<int>(f.clauses.size());
    DataGraph g(make_alphabet(Alphabet({"needs", "exists", "unique", "valid"}, {"bool", "clause"})));
    std::vector<std::string> all;
    for (int i = 1; i <= n; ++i) {
        g.add_node(idx("bot", i), "bool");
        g.add_node(idx("top", i), "bool");
        all.push_back(idx("bot", i));
        all.push_back(idx("top", i));
    }
    for (int j = 1; j <= m; ++j) {
        g.add_node(idx("c", j), "clause");
        all.push_back(idx("c", j));
    }
    for (int j = 1; j <= m; ++j)
        for (int l : f.clauses[static_cast<std::size_t>(j - 1)])
            g.add_edge(idx("c", j), idx(l > 0 ? "top" : "bot", std::abs(l)), "needs");
    for (int j = 1; j < m; ++j)
        g.add_edge(idx("c", j), idx("c", j + 1), "exists");
    for (const char* s : {"top", "bot"}) {
        g.add_edge(idx("c", m), idx(s, 1), "exists");
        g.add_edge(idx(s, n), idx("c", 1), "exists");
    }
    for (int i = 1; i < n; ++i)
        for (const char* a : {"top", "bot"})
            for (const char* b : {"top", "bot"})
                g.add_edge(idx(a, i), idx(b, i + 1), "exists");
    auto boolean = [](const std::string& id) { return id[0] != 'c'; };
    for (const auto& v : all)
        for (const auto& w : all) {
            const bool top_bot = v.rfind("top", 0) == 0 && w.rfind("bot", 0) == 0 && v.substr(3) == w.substr(3);
            if (!top_bot)
                g.add_edge(v, w, "unique");
            if (boolean(v) || !boolean(w))
                g.add_edge(v, w, "valid");
        }
    return detail::make_instance(std::move(g), {"path: exists+", "path: unique", "path: valid | needs . valid"});
}

// Nodes bot, top, x_i, c_j with an h-cycle in that order; nonempty subset
// repairs keep every node and exactly one assign edge per variable.
inline Instance gen_subset_node_instance(const Cnf3& f)
{
    f.validate();
    using detail::idx;
    const int n = f.n, m = static_cast<int>(f.clauses.size());
    DataGraph g(make_alphabet(Alphabet({"assign", "needs_true", "needs_false", "h"}, {"var", "clause", "top", "bot"})));
    std::vector<std::string> order{"bot", "top"};
    g.add_node("bot", "bot");
    g.add_node("top", "top");
    for (int i = 1; i <= n; ++i) {
        g.add_node(idx("x", i), "var");
        g.add_edge(idx("x", i), "bot", "assign");
        g.add_edge(idx("x", i), "top", "assign");
        order.push_back(idx("x", i));
    }
    for (int j = 1; j <= m; ++j) {
        const auto& c = f.clauses[static_cast<std::size_t>(j - 1)];
        g.add_node(idx("c", j), "clause");
        order.push_back(idx("c", j));
        for (int i = 1; i <= n; ++i) {
            if (detail::has_literal(c, i))
                g.add_edge(idx("c", j), idx("x", i), "needs_true");
            if (detail::has_literal(c, -i))
                g.add_edge(idx("c", j), idx("x", i), "needs_false");
        }
    }
    for (std::size_t k = 0; k < order.size(); ++k)
        g.add_edge(order[k], order[(k + 1) % order.size()], "h");
    return detail::make_instance(
        std::move(g), {"node: <h>", "node: data!=\"var\" || not <assign != assign>",
                       "node: data!=\"clause\" || <needs_true . assign . [data=\"top\"]> || "
                       "<needs_false . assign . [data=\"bot\"]>"});
}

inline std::string literal_value(int l)
{
    return (l > 0 ? "x" : "not_x") + std::to_string(std::abs(l));
}

// One "null" node over an open data domain; a superset repair adds literal
// nodes forming a satisfying partial valuation.
inline Instance gen_superset_infinite_instance(const Cnf3& f)
{
    f.validate();
    DataGraph g(make_alphabet(Alphabet::open({"down"})));
    g.add_node("v", "null");
    std::vector<std::string> lines;
    for (int i = 1; i <= f.n; ++i) {
        const std::string x = "\"" + literal_value(i) + "\"", nx = "\"" + literal_value(-i) + "\"";
        lines.push_back("path: [data=" + x + "] . down* . [data!=" + nx + "] | [data!=" + x + "] . down* . [data=" + nx +
                        "] | [data!=" + x + "] . down* . [data!=" + nx + "]");
    }
    for (const auto& c : f.clauses) {
        std::string s = "path: ";
        for (std::size_t k = 0; k < 3; ++k)
            s += std::string(k ? " | " : "") + "down* . [data=\"" + literal_value(c[k]) + "\"] . down*";
        lines.push_back(s);
    }
    return detail::make_instance(std::move(g), lines);
}

// The graph H for assignment a: the null node plus one node per literal true
// under a, with every label on every pair.
inline DataGraph valuation_graph(const Instance& inst, const Cnf3& f, std::uint32_t a)
{
    std::vector<std::string> vals;
    for (int i = 1; i <= f.n; ++i)
        vals.push_back(literal_value((a >> (i - 1)) & 1u ? i : -i));
    return build_graph(inst.graph, vals, inst.graph.alphabet().edge_labels());
}

// value_of edges cost 1, everything else 2, K = w(G) + n.
inline Instance gen_weight_superset_instance(const Cnf3& f)
{
    f.validate();
    using detail::idx;
    const int n = f.n, m = static_cast<int>(f.clauses.size());
    DataGraph g(make_alphabet(
        Alphabet({"value_of", "appears_in", "appears_negated_in"}, {"clause", "var", "top", "bot"})));
    g.add_node("bot", "bot");
    g.add_node("top", "top");
    for (int i = 1; i <= n; ++i)
        g.add_node(idx("x", i), "var");
    for (int j = 1; j <= m; ++j) {
        const auto& c = f.clauses[static_cast<std::size_t>(j - 1)];
        g.add_node(idx("c", j), "clause");
        for (int i = 1; i <= n; ++i) {
            if (detail::has_literal(c, i))
                g.add_edge(idx("x", i), idx("c", j), "appears_in");
            if (detail::has_literal(c, -i))
                g.add_edge(idx("x", i), idx("c", j), "appears_negated_in");
        }
    }
    WeightFn w;
    w.set_label("value_of", 1);
    w.set_label_default(2);
    w.set_value_default(2);
    const Weight k = add_weight(graph_weight(g, w), static_cast<Weight>(n));
    Instance inst = detail::make_instance(
        std::move(g),
        {"node: <[data!=\"var\"] | value_of . [data=\"top\"] | value_of . [data=\"bot\"]>",
         "node: <[data!=\"clause\"] | appears_in^- . value_of . [data=\"top\"] | "
         "appears_negated_in^- . value_of . [data=\"bot\"]>"});
    inst.weights = w;
    inst.k = k;
    return inst;
}

} // namespace gxr
