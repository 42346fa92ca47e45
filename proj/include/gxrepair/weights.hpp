#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gxrepair/consistency.hpp"
#include "gxrepair/error.hpp"
#include "gxrepair/evaluator.hpp"
#include "gxrepair/graph.hpp"
#include "gxrepair/graph_json.hpp"
#include "gxrepair/subset_repair.hpp"
#include "gxrepair/superset_repair.hpp"

namespace gxr {

using Weight = std::uint64_t;

inline constexpr Weight weight_cap = static_cast<Weight>(std::numeric_limits<std::int64_t>::max());

inline Weight add_weight(Weight a, Weight b)
{
    Weight s = 0;
    if (__builtin_add_overflow(a, b, &s) || s > weight_cap)
        throw Overflow("graph weight exceeds 2^63-1");
    return s;
}

// Weights for edge labels and data values. A "*" entry is the default for
// symbols not listed (needed for open Σ_n).
class WeightFn {
public:
    WeightFn() = default;

    static WeightFn uniform(Weight w)
    {
        WeightFn f;
        f.edge_default_ = w;
        f.data_default_ = w;
        return f;
    }

    void set_label(const std::string& l, Weight w) { edges_[l] = checked(w); }
    void set_value(const std::string& v, Weight w) { data_[v] = checked(w); }
    void set_label_default(Weight w) { edge_default_ = checked(w); }
    void set_value_default(Weight w) { data_default_ = checked(w); }

    Weight label(const std::string& l) const { return lookup(edges_, edge_default_, l, "edge label"); }
    Weight value(const std::string& v) const { return lookup(data_, data_default_, v, "data value"); }

    bool covers_label(const std::string& l) const { return edge_default_ || edges_.count(l); }
    bool covers_value(const std::string& v) const { return data_default_ || data_.count(v); }

    // {"edges": {"low": 1, "*": 2}, "data": {"*": 20}}
    static WeightFn from_json_text(const std::string& text)
    {
        using vt = nlohmann::json::value_t;
        const nlohmann::json doc = detail::parse_json_text(text);
        detail::JsonReader rd(text, doc);
        if (!doc.is_object())
            rd.fail("", "weight document must be an object");
        WeightFn f;
        for (const char* section : {"edges", "data"}) {
            if (!doc.contains(section))
                continue;
            const auto& obj = rd.member("", section, vt::object);
            for (const auto& [key, val] : obj.items()) {
                const std::string p = std::string("/") + section + "/" + key;
                if (!val.is_number_unsigned() && !(val.is_number_integer() && val.get<std::int64_t>() >= 0))
                    rd.fail(p, "weight must be a non-negative integer");
                const Weight w = val.get<Weight>();
                if (w > weight_cap)
                    rd.fail(p, "weight exceeds 2^63-1");
                const bool edges = std::string(section) == "edges";
                if (key == "*")
                    (edges ? f.edge_default_ : f.data_default_) = w;
                else
                    (edges ? f.edges_ : f.data_)[key] = w;
            }
        }
        return f;
    }

    static WeightFn load(const std::string& path) { return from_json_text(detail::read_file(path)); }

    nlohmann::ordered_json to_json() const
    {
        nlohmann::ordered_json j;
        j["edges"] = nlohmann::ordered_json::object();
        j["data"] = nlohmann::ordered_json::object();
        for (const auto& [k, v] : edges_)
            j["edges"][k] = v;
        if (edge_default_)
            j["edges"]["*"] = *edge_default_;
        for (const auto& [k, v] : data_)
            j["data"][k] = v;
        if (data_default_)
            j["data"]["*"] = *data_default_;
        return j;
    }

private:
    static Weight checked(Weight w)
    {
        if (w > weight_cap)
            throw Overflow("weight exceeds 2^63-1");
        return w;
    }

    static Weight lookup(const std::map<std::string, Weight>& m, const std::optional<Weight>& def, const std::string& key,
                         const char* what)
    {
        auto it = m.find(key);
        if (it != m.end())
            return it->second;
        if (def)
            return *def;
        throw InvalidArgument(std::string("weight function does not cover ") + what + " '" + key + "'");
    }

    std::map<std::string, Weight> edges_;
    std::map<std::string, Weight> data_;
    std::optional<Weight> edge_default_;
    std::optional<Weight> data_default_;
};

inline Weight graph_weight(const DataGraph& g, const WeightFn& w)
{
    Weight total = 0;
    for (const auto& [_, ls] : g.edges())
        for (const auto& l : ls)
            total = add_weight(total, w.label(l));
    for (const auto& [_, v] : g.nodes())
        total = add_weight(total, w.value(v));
    return total;
}

namespace detail {

// Weight of a subset-search candidate, computed from the atom masks.
class CandidateWeigher {
public:
    CandidateWeigher(const SubsetSearch& s, const DataGraph& g, const WeightFn& w) : s_(s)
    {
        for (const auto& id : s.ids())
            node_w_.push_back(w.value(g.data(id)));
        for (const auto& e : s.entries())
            entry_w_.push_back(w.label(g.alphabet().edge_labels()[e.label]));
    }

    Weight operator()(const SubsetSearch::Candidate& c) const
    {
        Weight total = 0;
        for (std::size_t i = 0; i < node_w_.size(); ++i)
            if (c.nodes >> i & 1u)
                total = add_weight(total, node_w_[i]);
        std::size_t k = 0;
        const auto& es = s_.entries();
        for (std::size_t e = 0; e < es.size(); ++e) {
            bool chosen = es[e].role == SubsetSearch::Role::Free ? (c.edges >> k++ & 1u) : es[e].role == SubsetSearch::Role::Fixed;
            if (chosen && (c.nodes >> es[e].from & 1u) && (c.nodes >> es[e].to & 1u))
                total = add_weight(total, entry_w_[e]);
        }
        return total;
    }

private:
    const SubsetSearch& s_;
    std::vector<Weight> node_w_;
    std::vector<Weight> entry_w_;
};

} // namespace detail

inline Decision k_weight_subset_decision(const DataGraph& g, const std::vector<Constraint>& r, const WeightFn& w, Weight k,
                                         SearchOptions opt = {})
{
    try {
        SubsetSearch s(g, r, false, opt);
        detail::CandidateWeigher weigh(s, g, w);
        bool found = false;
        s.for_each_consistent({}, [&](const SubsetSearch::Candidate& c) {
            found = weigh(c) >= k;
            return !found;
        });
        return found ? Decision::Yes : Decision::No;
    } catch (const BudgetExceeded&) {
        return Decision::BudgetExceeded;
    }
}

// Binary search for the optimum M with the K-weight decision, then
// remove atoms in canonical order (nodes by id, then (source, target, label)
// entries) whenever the decision for M stays yes. The survivor is consistent
// with weight M; zero-weight atoms removed on the way are restored by growing it
// to a maximal consistent subset.
inline DataGraph weight_preferred_subset(const DataGraph& g, const std::vector<Constraint>& r, const WeightFn& w,
                                         SearchOptions opt = {})
{
    auto decide = [&](const DataGraph& h, Weight k) {
        Decision d = k_weight_subset_decision(h, r, w, k, opt);
        if (d == Decision::BudgetExceeded)
            throw BudgetExceeded("weight-preferred subset search exceeds budget " + std::to_string(opt.budget));
        return d == Decision::Yes;
    };
    Weight lo = 0, hi = graph_weight(g, w);
    decide(g, 0);  // surfaces budget errors before the search
    while (lo < hi) {
        Weight mid = lo + (hi - lo + 1) / 2;
        if (decide(g, mid))
            lo = mid;
        else
            hi = mid - 1;
    }
    const Weight best = lo;

    DataGraph cur = g;
    for (const auto& [id, _] : g.nodes()) {
        DataGraph trial = cur;
        trial.remove_node(id);
        if (decide(trial, best))
            cur = std::move(trial);
    }
    for (const auto& [pair, ls] : g.edges()) {
        for (const auto& l : ls) {
            if (!cur.has_edge(pair.first, pair.second, l))
                continue;
            DataGraph trial = cur;
            trial.remove_edge(pair.first, pair.second, l);
            if (decide(trial, best))
                cur = std::move(trial);
        }
    }

    SubsetSearch s(g, r, false, opt);
    SubsetSearch::Candidate c;
    for (std::size_t i = 0; i < s.node_count(); ++i)
        if (cur.has_node(s.ids()[i]))
            c.nodes |= 1ull << i;
    const auto& free = s.free_entries();
    for (std::size_t k = 0; k < free.size(); ++k) {
        const auto& e = s.entries()[free[k]];
        if (cur.has_edge(s.ids()[e.from], s.ids()[e.to], g.alphabet().edge_labels()[e.label]))
            c.edges |= 1ull << k;
    }
    // Positive-only entries are implicit in candidates; cur may lack a few of zero weight.
    return s.graph(s.extend(c));
}

struct SupersetOptimum {
    std::optional<DataGraph> repair;
    Weight weight = 0;
};

namespace detail {

// One value set S of the standard-form search with its fully connected graph.
struct SupersetFrame {
    std::vector<std::string> values;
    DataGraph h;
    GraphIndex x;
    std::vector<std::string> ids;
    Weight base = 0;
    struct Added {
        std::size_t i, j, label;
        Weight w;
    };
    std::vector<Added> added;  // entries of h not in g, canonical (source, target, label) order

    SupersetFrame(const DataGraph& g, std::vector<std::string> s, const WeightFn& w)
        : values(std::move(s)), h(build_graph(g, values, g.alphabet().edge_labels())), x(GraphIndex::of(h))
    {
        base = graph_weight(g, w);
        for (const auto& v : values)
            base = add_weight(base, w.value(v));
        for (const auto& [id, _] : h.nodes())
            ids.push_back(id);
        const auto& labels = g.alphabet().edge_labels();
        std::vector<std::size_t> by_name(labels.size());
        for (std::size_t l = 0; l < labels.size(); ++l)
            by_name[l] = l;
        std::sort(by_name.begin(), by_name.end(), [&](std::size_t a, std::size_t b) { return labels[a] < labels[b]; });
        for (std::size_t i = 0; i < ids.size(); ++i)
            for (std::size_t j = 0; j < ids.size(); ++j)
                for (std::size_t l : by_name) {
                    if (g.has_node(ids[i]) && g.has_node(ids[j]) && g.has_edge(ids[i], ids[j], labels[l]))
                        continue;
                    added.push_back({i, j, l, w.label(labels[l])});
                }
    }

    DataGraph graph(const std::vector<bool>& keep) const
    {
        DataGraph out = h;
        for (std::size_t k = 0; k < added.size(); ++k)
            if (!keep[k])
                out.remove_edge(ids[added[k].i], ids[added[k].j], h.alphabet().edge_labels()[added[k].label]);
        return out;
    }
};

// Minimum-weight consistent standard-form superset of g.
//
// Positive r: every S of the value pool, then branch and bound over the added
// entries (exclude first). A branch is cut when its cost reaches the bound or
// when r fails even with every undecided entry present, which is sound because
// r is monotone.
//
// Other r: no such cut exists, so the same candidate space is searched by
// iterative deepening on the cost; the first threshold with a consistent
// candidate is the optimum.
inline SupersetOptimum min_weight_superset(const DataGraph& g, const std::vector<Constraint>& r, const WeightFn& w,
                                           std::optional<Weight> limit, SearchOptions opt, std::size_t node_limit)
{
    const bool monotone = all_positive(r);
    const ValuePool pool = superset_value_pool(g, r);
    std::vector<SupersetFrame> frames;
    for_each_value_subset(pool.values, opt.budget, [&](const std::vector<std::string>& s) {
        SupersetFrame f(g, s, w);
        if (!(limit && f.base > *limit) && (!monotone || satisfies(f.x, r, opt.eval)))
            frames.push_back(std::move(f));
        return true;
    });

    std::size_t visited = 0;
    auto tick = [&] {
        if (++visited > node_limit)
            throw BudgetExceeded("weighted superset search visited more than " + std::to_string(node_limit) + " states");
    };
    SupersetOptimum best;

    if (monotone) {
        std::optional<Weight> bound = limit;  // solutions must cost <= bound
        for (auto& f : frames) {
            if (bound && f.base > *bound)
                continue;
            std::vector<bool> keep(f.added.size(), true);
            std::optional<std::vector<bool>> found;
            Weight found_cost = 0;
            std::function<void(std::size_t, Weight)> dfs = [&](std::size_t k, Weight cost) {
                tick();
                if ((bound && cost > *bound) || (found && cost >= found_cost) || !satisfies(f.x, r, opt.eval))
                    return;
                if (k == f.added.size()) {
                    found = keep;
                    found_cost = cost;
                    return;
                }
                const auto& a = f.added[k];
                f.x.adj[a.label].reset(a.i, a.j);
                keep[k] = false;
                dfs(k + 1, cost);
                f.x.adj[a.label].set(a.i, a.j);
                keep[k] = true;
                // Including the entry leaves the state as checked above.
                dfs(k + 1, add_weight(cost, a.w));
            };
            dfs(0, f.base);
            if (found && (!best.repair || found_cost < best.weight)) {
                best.repair = f.graph(*found);
                best.weight = found_cost;
                bound = found_cost;
                if (limit)
                    break;  // a decision needs one witness
            }
        }
        return best;
    }

    std::optional<Weight> threshold;
    for (const auto& f : frames)
        if (!threshold || f.base < *threshold)
            threshold = f.base;
    while (threshold && !(limit && *threshold > *limit)) {
        std::optional<Weight> next;
        for (auto& f : frames) {
            if (f.base > *threshold) {
                if (!next || f.base < *next)
                    next = f.base;
                continue;
            }
            // Start from no added entries and switch them on.
            for (const auto& a : f.added)
                f.x.adj[a.label].reset(a.i, a.j);
            std::vector<bool> keep(f.added.size(), false);
            bool found = false;
            std::function<void(std::size_t, Weight)> dfs = [&](std::size_t k, Weight cost) {
                tick();
                if (k == f.added.size()) {
                    found = cost == *threshold && satisfies(f.x, r, opt.eval);
                    return;
                }
                dfs(k + 1, cost);
                if (found)
                    return;
                const auto& a = f.added[k];
                const Weight c = add_weight(cost, a.w);
                if (c > *threshold) {
                    if (!next || c < *next)
                        next = c;
                    return;
                }
                f.x.adj[a.label].set(a.i, a.j);
                keep[k] = true;
                dfs(k + 1, c);
                if (found)
                    return;
                f.x.adj[a.label].reset(a.i, a.j);
                keep[k] = false;
            };
            dfs(0, f.base);
            for (const auto& a : f.added)
                f.x.adj[a.label].set(a.i, a.j);
            if (found) {
                best.repair = f.graph(keep);
                best.weight = *threshold;
                return best;
            }
        }
        threshold = next;
    }
    return best;
}

} // namespace detail

inline Decision k_weight_superset_decision(const DataGraph& g, const std::vector<Constraint>& r, const WeightFn& w, Weight k,
                                           SearchOptions opt = {}, std::size_t node_limit = 20'000'000)
{
    try {
        return detail::min_weight_superset(g, r, w, k, opt, node_limit).repair ? Decision::Yes : Decision::No;
    } catch (const BudgetExceeded&) {
        return Decision::BudgetExceeded;
    }
}

// Minimum-weight standard-form superset repair. Added nodes and then added edges
// that can be dropped without breaking r are dropped (weights are
// non-negative, so this never increases the weight).
inline SupersetOptimum weight_preferred_superset(const DataGraph& g, const std::vector<Constraint>& r, const WeightFn& w,
                                                 SearchOptions opt = {}, std::size_t node_limit = 20'000'000)
{
    SupersetOptimum best = detail::min_weight_superset(g, r, w, std::nullopt, opt, node_limit);
    if (!best.repair)
        return best;
    DataGraph h = *best.repair;
    for (const auto& [id, _] : best.repair->nodes()) {
        if (g.has_node(id))
            continue;
        DataGraph trial = h;
        trial.remove_node(id);
        if (satisfies(trial, r, opt.eval))
            h = std::move(trial);
    }
    h = minimize_added_edges(h, g, r, opt.eval);
    best.weight = graph_weight(h, w);
    best.repair = std::move(h);
    return best;
}

} // namespace gxr
