#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "gxrepair/error.hpp"
#include "gxrepair/expr.hpp"
#include "gxrepair/graph.hpp"
#include "gxrepair/syntax.hpp"

namespace gxr {

// p => q becomes q | !(p), φ => ψ becomes ψ || not φ, p+ becomes p . p*, and
// _^- becomes the union of ℓ^- over Σ_e in alphabet order.
inline PathPtr desugar(const PathPtr& p, const Alphabet& a);
inline NodePtr desugar(const NodePtr& n, const Alphabet& a);

inline PathPtr desugar(const PathPtr& p, const Alphabet& a)
{
    switch (p->kind) {
    case PathKind::Epsilon:
    case PathKind::Wildcard:
    case PathKind::Label:
    case PathKind::Inverse: return p;
    case PathKind::Test: return path::test(desugar(p->test, a));
    case PathKind::Concat: return path::concat(desugar(p->lhs, a), desugar(p->rhs, a));
    case PathKind::Union: return path::alt(desugar(p->lhs, a), desugar(p->rhs, a));
    case PathKind::Intersect: return path::meet(desugar(p->lhs, a), desugar(p->rhs, a));
    case PathKind::Star: return path::star(desugar(p->lhs, a));
    case PathKind::Complement: return path::complement(desugar(p->lhs, a));
    case PathKind::Counter: return path::counter(desugar(p->lhs, a), p->min, p->max);
    case PathKind::Implies: return path::alt(desugar(p->rhs, a), path::complement(desugar(p->lhs, a)));
    case PathKind::Plus: {
        PathPtr q = desugar(p->lhs, a);
        return path::concat(q, path::star(q));
    }
    case PathKind::WildcardInverse: {
        PathPtr out;
        for (const auto& l : a.edge_labels())
            out = out ? path::alt(out, path::inverse(l)) : path::inverse(l);
        return out;
    }
    }
    return p;
}

inline NodePtr desugar(const NodePtr& n, const Alphabet& a)
{
    switch (n->kind) {
    case NodeKind::Not: return node::negate(desugar(n->lhs, a));
    case NodeKind::And: return node::both(desugar(n->lhs, a), desugar(n->rhs, a));
    case NodeKind::Or: return node::either(desugar(n->lhs, a), desugar(n->rhs, a));
    case NodeKind::Implies: return node::either(desugar(n->rhs, a), node::negate(desugar(n->lhs, a)));
    case NodeKind::Exists: return node::exists(desugar(n->path, a));
    case NodeKind::PathEq: return node::path_eq(desugar(n->path, a), desugar(n->path2, a));
    case NodeKind::PathNeq: return node::path_neq(desugar(n->path, a), desugar(n->path2, a));
    case NodeKind::DataEq:
    case NodeKind::DataNeq: return n;
    }
    return n;
}

inline Constraint desugar(const Constraint& c, const Alphabet& a)
{
    return c.kind == ConstraintKind::Path ? Constraint::of(desugar(c.path, a)) : Constraint::of(desugar(c.node, a));
}

// Sign bookkeeping for occurrences of edge labels. An occurrence under an odd
// number of complements/negations is negative; the wildcard occurs as every label.
struct Polarity {
    bool positive = false;
    bool negative = false;
};

using PolarityMap = std::map<std::string, Polarity>;

namespace detail {

struct PolarityWalker {
    const Alphabet& alphabet;
    PolarityMap& out;
    bool complement_seen = false;

    void mark(const std::string& l, bool pos)
    {
        auto& p = out[l];
        (pos ? p.positive : p.negative) = true;
    }

    void mark_all(bool pos)
    {
        for (const auto& l : alphabet.edge_labels())
            mark(l, pos);
    }

    void walk(const PathPtr& p, bool pos)
    {
        switch (p->kind) {
        case PathKind::Epsilon: return;
        case PathKind::Wildcard:
        case PathKind::WildcardInverse: mark_all(pos); return;
        case PathKind::Label:
        case PathKind::Inverse: mark(p->label, pos); return;
        case PathKind::Test: walk(p->test, pos); return;
        case PathKind::Concat:
        case PathKind::Union:
        case PathKind::Intersect:
            walk(p->lhs, pos);
            walk(p->rhs, pos);
            return;
        case PathKind::Star:
        case PathKind::Plus:
        case PathKind::Counter: walk(p->lhs, pos); return;
        case PathKind::Complement:
            complement_seen = true;
            walk(p->lhs, !pos);
            return;
        case PathKind::Implies:
            complement_seen = true;
            walk(p->lhs, !pos);
            walk(p->rhs, pos);
            return;
        }
    }

    void walk(const NodePtr& n, bool pos)
    {
        switch (n->kind) {
        case NodeKind::Not:
            complement_seen = true;
            walk(n->lhs, !pos);
            return;
        case NodeKind::Implies:
            complement_seen = true;
            walk(n->lhs, !pos);
            walk(n->rhs, pos);
            return;
        case NodeKind::And:
        case NodeKind::Or:
            walk(n->lhs, pos);
            walk(n->rhs, pos);
            return;
        case NodeKind::Exists: walk(n->path, pos); return;
        case NodeKind::PathEq:
        case NodeKind::PathNeq:
            walk(n->path, pos);
            walk(n->path2, pos);
            return;
        case NodeKind::DataEq:
        case NodeKind::DataNeq: return;
        }
    }
};

inline void collect_values(const PathPtr& p, std::set<std::string>& out);

inline void collect_values(const NodePtr& n, std::set<std::string>& out)
{
    if (!n)
        return;
    if (n->kind == NodeKind::DataEq || n->kind == NodeKind::DataNeq)
        out.insert(n->value);
    collect_values(n->lhs, out);
    collect_values(n->rhs, out);
    collect_values(n->path, out);
    collect_values(n->path2, out);
}

inline void collect_values(const PathPtr& p, std::set<std::string>& out)
{
    if (!p)
        return;
    collect_values(p->lhs, out);
    collect_values(p->rhs, out);
    collect_values(p->test, out);
}

inline void collect_labels(const PathPtr& p, std::set<std::string>& out);

inline void collect_labels(const NodePtr& n, std::set<std::string>& out)
{
    if (!n)
        return;
    collect_labels(n->lhs, out);
    collect_labels(n->rhs, out);
    collect_labels(n->path, out);
    collect_labels(n->path2, out);
}

inline void collect_labels(const PathPtr& p, std::set<std::string>& out)
{
    if (!p)
        return;
    if (p->kind == PathKind::Label || p->kind == PathKind::Inverse)
        out.insert(p->label);
    collect_labels(p->lhs, out);
    collect_labels(p->rhs, out);
    collect_labels(p->test, out);
}

} // namespace detail

// True iff the expression lies in the positive fragment: no path complement and
// no node negation, including the ones implication introduces.
inline bool is_positive(const PathPtr& p)
{
    PolarityMap scratch;
    static const Alphabet dummy = Alphabet::open({"x"});
    detail::PolarityWalker w{dummy, scratch};
    w.walk(p, true);
    return !w.complement_seen;
}

inline bool is_positive(const NodePtr& n)
{
    PolarityMap scratch;
    static const Alphabet dummy = Alphabet::open({"x"});
    detail::PolarityWalker w{dummy, scratch};
    w.walk(n, true);
    return !w.complement_seen;
}

inline bool is_positive(const Constraint& c) { return c.kind == ConstraintKind::Path ? is_positive(c.path) : is_positive(c.node); }

inline bool all_positive(const std::vector<Constraint>& r)
{
    for (const auto& c : r)
        if (!is_positive(c))
            return false;
    return true;
}

inline PolarityMap label_polarity(const Constraint& c, const Alphabet& a)
{
    PolarityMap out;
    detail::PolarityWalker w{a, out};
    if (c.kind == ConstraintKind::Path)
        w.walk(c.path, true);
    else
        w.walk(c.node, true);
    return out;
}

inline PolarityMap label_polarity(const std::vector<Constraint>& r, const Alphabet& a)
{
    PolarityMap out;
    detail::PolarityWalker w{a, out};
    for (const auto& c : r) {
        if (c.kind == ConstraintKind::Path)
            w.walk(c.path, true);
        else
            w.walk(c.node, true);
    }
    return out;
}

// Σ_n^R: data values occurring in data tests of the constraints.
inline std::set<std::string> mentioned_values(const std::vector<Constraint>& r)
{
    std::set<std::string> out;
    for (const auto& c : r) {
        detail::collect_values(c.path, out);
        detail::collect_values(c.node, out);
    }
    return out;
}

inline std::set<std::string> mentioned_labels(const std::vector<Constraint>& r)
{
    std::set<std::string> out;
    for (const auto& c : r) {
        detail::collect_labels(c.path, out);
        detail::collect_labels(c.node, out);
    }
    return out;
}

// Constraint file: one constraint per line, "path: <expr>" or "node: <expr>";
// '#' starts a comment outside string literals; blank lines are ignored.
// Returned constraints are desugared.
inline std::vector<Constraint> parse_constraints_raw(std::string_view text, const Alphabet& a)
{
    std::vector<Constraint> out;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(start, end - start);
        ++line_no;
        start = end + 1;

        bool in_string = false;
        std::size_t cut = line.size();
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (in_string && line[i] == '\\') {
                ++i;
            } else if (line[i] == '"') {
                in_string = !in_string;
            } else if (!in_string && line[i] == '#') {
                cut = i;
                break;
            }
        }
        line = line.substr(0, cut);
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string_view::npos)
            continue;
        std::string_view body = line.substr(first);
        auto body_column = [&](std::size_t offset) {
            std::size_t col = 1;
            for (std::size_t i = 0; i < first + offset; ++i)
                if ((static_cast<unsigned char>(line[i]) & 0xC0) != 0x80)
                    ++col;
            return col;
        };
        if (body.rfind("path:", 0) == 0) {
            out.push_back(Constraint::of(detail::Parser(body.substr(5), &a, line_no, body_column(5)).whole_path()));
        } else if (body.rfind("node:", 0) == 0) {
            out.push_back(Constraint::of(detail::Parser(body.substr(5), &a, line_no, body_column(5)).whole_node()));
        } else {
            throw ParseError("expected 'path:' or 'node:' at start of constraint", line_no, body_column(0));
        }
        if (end == text.size())
            break;
    }
    return out;
}

inline std::vector<Constraint> parse_constraints(std::string_view text, const Alphabet& a)
{
    std::vector<Constraint> out = parse_constraints_raw(text, a);
    for (auto& c : out)
        c = desugar(c, a);
    return out;
}

inline std::string print_constraints(const std::vector<Constraint>& r)
{
    std::string out;
    for (const auto& c : r)
        out += to_string(c) + "\n";
    return out;
}

} // namespace gxr
