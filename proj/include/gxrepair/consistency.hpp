#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gxrepair/evaluator.hpp"
#include "gxrepair/expr.hpp"
#include "gxrepair/graph.hpp"

namespace gxr {

struct Violation {
    ConstraintKind kind;
    std::size_t constraint;  // index into the constraint list
    std::string from;        // the node, or the pair's source
    std::string to;          // pair target; empty for node constraints
};

struct CheckResult {
    std::vector<Violation> violations;

    bool consistent() const noexcept { return violations.empty(); }
};

// G ⊨ R on an index. Stops at the first failing constraint.
inline bool satisfies(const GraphIndex& x, const std::vector<Constraint>& r, EvalOptions opt = {})
{
    Evaluator ev(x, opt);
    for (const auto& c : r) {
        if (c.kind == ConstraintKind::Node) {
            if (!ev.node(*c.node).all())
                return false;
        } else if (!ev.path(*c.path).all()) {
            return false;
        }
    }
    return true;
}

inline bool satisfies(const DataGraph& g, const std::vector<Constraint>& r, EvalOptions opt = {})
{
    return satisfies(GraphIndex::of(g), r, opt);
}

// Every violation, ordered by constraint index and then by witness.
inline CheckResult check(const DataGraph& g, const std::vector<Constraint>& r, EvalOptions opt = {})
{
    CheckResult out;
    GraphIndex x = GraphIndex::of(g);
    Evaluator ev(x, opt);
    std::vector<std::string> ids;
    for (const auto& [id, _] : g.nodes())
        ids.push_back(id);
    for (std::size_t k = 0; k < r.size(); ++k) {
        if (r[k].kind == ConstraintKind::Node) {
            BitSet s = ev.node(*r[k].node);
            for (std::size_t i = 0; i < x.n; ++i)
                if (!s.test(i))
                    out.violations.push_back({ConstraintKind::Node, k, ids[i], {}});
        } else {
            BitMatrix m = ev.path(*r[k].path);
            for (std::size_t i = 0; i < x.n; ++i)
                for (std::size_t j = 0; j < x.n; ++j)
                    if (!m.test(i, j))
                        out.violations.push_back({ConstraintKind::Path, k, ids[i], ids[j]});
        }
    }
    return out;
}

} // namespace gxr
