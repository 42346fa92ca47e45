#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "gxrepair/consistency.hpp"
#include "gxrepair/constraints.hpp"
#include "gxrepair/error.hpp"
#include "gxrepair/evaluator.hpp"
#include "gxrepair/graph.hpp"
#include "gxrepair/subset_repair.hpp"

namespace gxr {

// Data values a standard-form superset of g may add: (Σ_n^R ∪ fresh) \ Σ_n^g.
struct ValuePool {
    std::vector<std::string> values;  // sorted
    std::vector<std::string> fresh;   // the fresh values among them
    bool fresh_shortfall = false;     // finite Σ_n offered fewer than two fresh values
};

// Every token of g and r, so generated values cannot collide with them.
inline std::set<std::string> observed_tokens(const DataGraph& g, const std::vector<Constraint>& r)
{
    std::set<std::string> out = mentioned_values(r);
    for (const auto& [id, v] : g.nodes()) {
        out.insert(id);
        out.insert(v);
    }
    for (const auto& l : g.alphabet().edge_labels())
        out.insert(l);
    return out;
}

inline ValuePool superset_value_pool(const DataGraph& g, const std::vector<Constraint>& r,
                                     const std::function<bool(const std::string&)>& admissible = {})
{
    ValuePool p;
    const std::set<std::string> in_g = g.data_values();
    std::set<std::string> avoid = observed_tokens(g, r);
    std::set<std::string> vals;
    for (const auto& v : mentioned_values(r))
        if (!in_g.count(v) && (!admissible || admissible(v)))
            vals.insert(v);
    if (g.alphabet().is_open()) {
        p.fresh = g.alphabet().fresh_values(2, avoid);
    } else {
        for (const auto& v : g.alphabet().data_values()) {
            if (p.fresh.size() == 2)
                break;
            if (!avoid.count(v) && (!admissible || admissible(v)))
                p.fresh.push_back(v);
        }
        p.fresh_shortfall = p.fresh.size() < 2;
    }
    vals.insert(p.fresh.begin(), p.fresh.end());
    p.values.assign(vals.begin(), vals.end());
    return p;
}

// All subsets of `pool` by increasing size, each size in lexicographic order.
// The visitor returns false to stop.
inline void for_each_value_subset(const std::vector<std::string>& pool, std::size_t budget,
                                  const std::function<bool(const std::vector<std::string>&)>& visit)
{
    if (pool.size() > budget || pool.size() > 62)
        throw BudgetExceeded("superset search over " + std::to_string(pool.size()) + " candidate values exceeds budget " +
                             std::to_string(budget));
    const std::size_t n = pool.size();
    for (std::size_t k = 0; k <= n; ++k) {
        std::vector<std::size_t> idx(k);
        for (std::size_t i = 0; i < k; ++i)
            idx[i] = i;
        for (;;) {
            std::vector<std::string> s;
            for (auto i : idx)
                s.push_back(pool[i]);
            if (!visit(s))
                return;
            // next combination
            std::size_t i = k;
            while (i > 0 && idx[i - 1] == n - k + i - 1)
                --i;
            if (i == 0)
                break;
            ++idx[i - 1];
            for (std::size_t j = i; j < k; ++j)
                idx[j] = idx[j - 1] + 1;
        }
    }
}

// Greedily delete entries of h that are not in g, scanning (source, target, label)
// lexicographically, keeping a deletion when r still holds.
inline DataGraph minimize_added_edges(const DataGraph& h, const DataGraph& g, const std::vector<Constraint>& r,
                                      EvalOptions opt = {})
{
    GraphIndex x = GraphIndex::of(h);
    std::vector<std::string> ids;
    for (const auto& [id, _] : h.nodes())
        ids.push_back(id);
    auto pos = [&](const std::string& id) {
        return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
    };
    DataGraph out = h;
    for (const auto& [pair, ls] : h.edges()) {
        for (const auto& l : ls) {
            if (g.has_node(pair.first) && g.has_node(pair.second) && g.has_edge(pair.first, pair.second, l))
                continue;
            const std::size_t i = pos(pair.first), j = pos(pair.second), li = *h.alphabet().label_index(l);
            x.adj[li].reset(i, j);
            if (satisfies(x, r, opt))
                out.remove_edge(pair.first, pair.second, l);
            else
                x.adj[li].set(i, j);
        }
    }
    return out;
}

struct SupersetResult {
    std::optional<DataGraph> repair;
    ValuePool pool;
};

inline void require_positive(const std::vector<Constraint>& r, const char* what)
{
    if (!all_positive(r))
        throw Unsupported(std::string(what) + " requires positive constraints (no complement or negation)");
}

// Superset repair for positive constraints: the first value set S (smallest
// first) whose fully connected extension is consistent, then added edges are
// dropped while r still holds.
inline SupersetResult superset_repair(const DataGraph& g, const std::vector<Constraint>& r, SearchOptions opt = {})
{
    require_positive(r, "superset repair");
    SupersetResult out;
    out.pool = superset_value_pool(g, r);
    std::optional<DataGraph> first;
    for_each_value_subset(out.pool.values, opt.budget, [&](const std::vector<std::string>& s) {
        DataGraph h = build_graph(g, s, g.alphabet().edge_labels());
        if (!satisfies(h, r, opt.eval))
            return true;
        first = std::move(h);
        return false;
    });
    if (first)
        out.repair = minimize_added_edges(*first, g, r, opt.eval);
    return out;
}

// Superset repair for positive node constraints. After discarding violating added
// nodes, each remaining added node is tentatively removed (re-running the
// discard cascade); the removal sticks when no node of g is lost. This makes
// the node set minimal, then edges are minimized as in superset_repair.
inline SupersetResult superset_repair_node_positive(const DataGraph& g, const std::vector<Constraint>& r, EvalOptions opt = {})
{
    for (const auto& c : r)
        if (c.kind != ConstraintKind::Node)
            throw Unsupported("node-only superset repair given a path constraint");
    require_positive(r, "superset repair");
    SupersetResult out;
    out.pool = superset_value_pool(g, r);

    // The node-dropping subset repair restricted to added nodes; nullopt when a node of g violates.
    auto settle = [&](DataGraph h) -> std::optional<DataGraph> {
        for (;;) {
            GraphIndex x = GraphIndex::of(h);
            Evaluator ev(x, opt);
            BitSet ok = BitSet::full(x.n);
            for (const auto& c : r)
                ok &= ev.node(*c.node);
            if (ok.all())
                return h;
            std::set<std::string> keep;
            std::size_t i = 0;
            for (const auto& [id, _] : h.nodes()) {
                if (ok.test(i))
                    keep.insert(id);
                else if (g.has_node(id))
                    return std::nullopt;
                ++i;
            }
            h = induced_subgraph(h, keep);
        }
    };

    auto h = settle(build_graph(g, out.pool.values, g.alphabet().edge_labels()));
    if (!h)
        return out;
    for (const auto& v : out.pool.values) {
        const std::string id = value_node_id(v);
        if (!h->has_node(id))
            continue;
        DataGraph trial = *h;
        trial.remove_node(id);
        if (auto settled = settle(std::move(trial)))
            h = std::move(settled);
    }
    out.repair = minimize_added_edges(*h, g, r, opt);
    return out;
}

inline Decision exists_superset_repair(const DataGraph& g, const std::vector<Constraint>& r, SearchOptions opt = {})
{
    require_positive(r, "superset repair existence");
    try {
        ValuePool pool = superset_value_pool(g, r);
        bool found = false;
        for_each_value_subset(pool.values, opt.budget, [&](const std::vector<std::string>& s) {
            found = satisfies(build_graph(g, s, g.alphabet().edge_labels()), r, opt.eval);
            return !found;
        });
        return found ? Decision::Yes : Decision::No;
    } catch (const BudgetExceeded&) {
        return Decision::BudgetExceeded;
    }
}

} // namespace gxr
