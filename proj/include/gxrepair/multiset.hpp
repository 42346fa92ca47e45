#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gxrepair/consistency.hpp"
#include "gxrepair/error.hpp"
#include "gxrepair/graph.hpp"
#include "gxrepair/graph_json.hpp"
#include "gxrepair/subset_repair.hpp"
#include "gxrepair/superset_repair.hpp"

namespace gxr {

// Multiset of edge labels (one per (pair, label) entry) and node data values.
using LabelDataMultiset = std::map<std::string, std::uint64_t>;

inline LabelDataMultiset multiset_of(const DataGraph& g)
{
    LabelDataMultiset m;
    for (const auto& [_, ls] : g.edges())
        for (const auto& l : ls)
            ++m[l];
    for (const auto& [_, v] : g.nodes())
        ++m[v];
    return m;
}

enum class Comparison { Less, Equal, Greater, Incomparable };

inline const char* to_string(Comparison c)
{
    switch (c) {
    case Comparison::Less: return "less";
    case Comparison::Equal: return "equal";
    case Comparison::Greater: return "greater";
    case Comparison::Incomparable: return "incomparable";
    }
    return "?";
}

// A quasi-order given by its equivalence classes and a strict order on them.
// Symbols outside every class are singleton classes comparable to nothing,
// unless the fallback is disabled, in which case asking about them is an error.
class QuasiOrder {
public:
    QuasiOrder() = default;

    QuasiOrder(std::vector<std::vector<std::string>> classes, const std::vector<std::pair<std::size_t, std::size_t>>& less,
               bool implicit_singletons = true)
        : classes_(std::move(classes)), implicit_(implicit_singletons)
    {
        const std::size_t k = classes_.size();
        for (std::size_t i = 0; i < k; ++i) {
            if (classes_[i].empty())
                throw InvalidArgument("order class " + std::to_string(i) + " is empty");
            for (const auto& s : classes_[i])
                if (!class_of_.emplace(s, i).second)
                    throw InvalidArgument("symbol '" + s + "' appears in two order classes");
        }
        less_.assign(k, std::vector<bool>(k, false));
        for (auto [a, b] : less) {
            if (a >= k || b >= k)
                throw InvalidArgument("order pair refers to a missing class");
            less_[a][b] = true;
        }
        for (std::size_t m = 0; m < k; ++m)
            for (std::size_t i = 0; i < k; ++i)
                if (less_[i][m])
                    for (std::size_t j = 0; j < k; ++j)
                        if (less_[m][j])
                            less_[i][j] = true;
        for (std::size_t i = 0; i < k; ++i)
            if (less_[i][i])
                throw InvalidArgument("order relation has a cycle through class " + std::to_string(i));
    }

    // Total order s0 < s1 < ... on single symbols.
    static QuasiOrder chain(const std::vector<std::string>& symbols)
    {
        std::vector<std::vector<std::string>> cls;
        std::vector<std::pair<std::size_t, std::size_t>> less;
        for (std::size_t i = 0; i < symbols.size(); ++i) {
            cls.push_back({symbols[i]});
            if (i)
                less.emplace_back(i - 1, i);
        }
        return QuasiOrder(std::move(cls), less);
    }

    // {"classes": [["dirt"], ["asphalt"], ["road"]], "less": [[0, 1], [1, 2]], "implicit_singletons": true}
    static QuasiOrder from_json_text(const std::string& text)
    {
        using vt = nlohmann::json::value_t;
        const nlohmann::json doc = detail::parse_json_text(text);
        detail::JsonReader rd(text, doc);
        if (!doc.is_object())
            rd.fail("", "order document must be an object");
        std::vector<std::vector<std::string>> cls;
        const auto& cs = rd.member("", "classes", vt::array);
        for (std::size_t i = 0; i < cs.size(); ++i) {
            const std::string p = "/classes/" + std::to_string(i);
            if (!cs[i].is_array())
                rd.fail(p, "order class must be an array of symbols");
            std::vector<std::string> c;
            for (std::size_t j = 0; j < cs[i].size(); ++j)
                c.push_back(rd.string_at(p + "/" + std::to_string(j)));
            cls.push_back(std::move(c));
        }
        std::vector<std::pair<std::size_t, std::size_t>> less;
        if (doc.contains("less")) {
            const auto& ls = rd.member("", "less", vt::array);
            for (std::size_t i = 0; i < ls.size(); ++i) {
                const std::string p = "/less/" + std::to_string(i);
                if (!ls[i].is_array() || ls[i].size() != 2 || !ls[i][0].is_number_unsigned() || !ls[i][1].is_number_unsigned())
                    rd.fail(p, "order pair must be [lower, upper] class indices");
                less.emplace_back(ls[i][0].get<std::size_t>(), ls[i][1].get<std::size_t>());
            }
        }
        bool implicit = true;
        if (doc.contains("implicit_singletons"))
            implicit = rd.member("", "implicit_singletons", vt::boolean).get<bool>();
        try {
            return QuasiOrder(std::move(cls), less, implicit);
        } catch (const InvalidArgument& e) {
            rd.fail("/less", e.what());
        }
    }

    static QuasiOrder load(const std::string& path) { return from_json_text(detail::read_file(path)); }

    const std::vector<std::vector<std::string>>& classes() const noexcept { return classes_; }
    bool implicit_singletons() const noexcept { return implicit_; }

    bool covers(const std::string& s) const { return class_of_.count(s) != 0; }

    std::optional<std::size_t> class_of(const std::string& s) const
    {
        auto it = class_of_.find(s);
        if (it != class_of_.end())
            return it->second;
        if (!implicit_)
            throw InvalidArgument("symbol '" + s + "' is not covered by the order");
        return std::nullopt;
    }

    // Strict order a < b on symbols.
    bool less(const std::string& a, const std::string& b) const
    {
        auto ca = class_of(a), cb = class_of(b);
        return ca && cb && less_[*ca][*cb];
    }

    bool class_less(std::size_t a, std::size_t b) const { return less_[a][b]; }
    std::size_t class_count() const noexcept { return classes_.size(); }

private:
    std::vector<std::vector<std::string>> classes_;
    std::map<std::string, std::size_t> class_of_;
    std::vector<std::vector<bool>> less_;
    bool implicit_ = true;
};

namespace detail {

// Multiset projected onto classes. Keys below class_count() are declared
// classes; uncovered symbols get their own keys above that.
struct ProjectedMultiset {
    std::map<std::size_t, std::uint64_t> counts;
};

inline std::pair<ProjectedMultiset, ProjectedMultiset> project(const LabelDataMultiset& m1, const LabelDataMultiset& m2,
                                                              const QuasiOrder& order)
{
    std::map<std::string, std::size_t> extra;
    auto key = [&](const std::string& s) {
        if (auto c = order.class_of(s))
            return *c;
        auto it = extra.find(s);
        if (it == extra.end())
            it = extra.emplace(s, order.class_count() + extra.size()).first;
        return it->second;
    };
    ProjectedMultiset a, b;
    for (const auto& [s, n] : m1)
        if (n)
            a.counts[key(s)] += n;
    for (const auto& [s, n] : m2)
        if (n)
            b.counts[key(s)] += n;
    return {a, b};
}

// Dershowitz-Manna: a < b iff a != b and every key where a exceeds b is
// dominated by a strictly greater key where b exceeds a.
inline bool dm_less(const ProjectedMultiset& a, const ProjectedMultiset& b, const QuasiOrder& order)
{
    if (a.counts == b.counts)
        return false;
    auto count = [](const ProjectedMultiset& m, std::size_t k) {
        auto it = m.counts.find(k);
        return it == m.counts.end() ? std::uint64_t{0} : it->second;
    };
    std::set<std::size_t> keys;
    for (const auto& [k, _] : a.counts)
        keys.insert(k);
    for (const auto& [k, _] : b.counts)
        keys.insert(k);
    const std::size_t declared = order.class_count();
    for (std::size_t x : keys) {
        if (count(a, x) <= count(b, x))
            continue;
        bool covered = false;
        for (std::size_t y : keys) {
            if (x < declared && y < declared && order.class_less(x, y) && count(a, y) < count(b, y)) {
                covered = true;
                break;
            }
        }
        if (!covered)
            return false;
    }
    return true;
}

} // namespace detail

inline Comparison multiset_less(const LabelDataMultiset& m1, const LabelDataMultiset& m2, const QuasiOrder& order)
{
    auto [a, b] = detail::project(m1, m2, order);
    if (a.counts == b.counts)
        return Comparison::Equal;
    if (detail::dm_less(a, b, order))
        return Comparison::Less;
    if (detail::dm_less(b, a, order))
        return Comparison::Greater;
    return Comparison::Incomparable;
}

inline Comparison compare_graphs(const DataGraph& g1, const DataGraph& g2, const QuasiOrder& order)
{
    return multiset_less(multiset_of(g1), multiset_of(g2), order);
}

// No symbol x of g with d < x.
inline bool bounded_by(const DataGraph& g, const std::string& d, const QuasiOrder& order)
{
    for (const auto& [s, _] : multiset_of(g))
        if (order.less(d, s))
            return false;
    return true;
}

// d-bounded superset repair certificate. Values above d are never candidates; fresh values are drawn from
// symbols not above d (open Σ_n: generated tokens, which are unordered).
inline std::optional<DataGraph> superset_repair_bound(const DataGraph& g, const std::vector<Constraint>& r,
                                                      const std::string& d, const QuasiOrder& order, SearchOptions opt = {})
{
    require_positive(r, "bounded superset repair");
    auto not_above = [&](const std::string& x) { return !order.less(d, x); };
    // Surface order gaps up front rather than midway through the search.
    for (const auto& l : g.alphabet().edge_labels())
        not_above(l);
    for (const auto& v : g.data_values())
        not_above(v);
    for (const auto& v : mentioned_values(r))
        not_above(v);

    std::vector<std::string> allowed;
    for (const auto& l : g.alphabet().edge_labels())
        if (not_above(l))
            allowed.push_back(l);
    const ValuePool pool = superset_value_pool(g, r, [&](const std::string& v) { return not_above(v); });

    const bool generated = g.alphabet().is_open();
    auto bounded = [&](const DataGraph& h) {
        for (const auto& [x, _] : multiset_of(h)) {
            bool fresh = generated && std::find(pool.fresh.begin(), pool.fresh.end(), x) != pool.fresh.end();
            if (!fresh && !not_above(x))
                return false;
        }
        return true;
    };

    std::optional<DataGraph> out;
    for_each_value_subset(pool.values, opt.budget, [&](const std::vector<std::string>& s) {
        DataGraph h = build_graph(g, s, allowed);
        if (satisfies(h, r, opt.eval) && bounded(h)) {
            out = std::move(h);
            return false;
        }
        return true;
    });
    return out;
}

// Subset repairs that no other subset repair is strictly below, in the order of
// enumerate_subset_repairs.
inline std::vector<DataGraph> multiset_preferred_subset_repairs(const DataGraph& g, const std::vector<Constraint>& r,
                                                                const QuasiOrder& order, SearchOptions opt = {})
{
    std::vector<DataGraph> reps = enumerate_subset_repairs(g, r, opt);
    std::vector<LabelDataMultiset> ms;
    for (const auto& h : reps)
        ms.push_back(multiset_of(h));
    std::vector<DataGraph> out;
    for (std::size_t i = 0; i < reps.size(); ++i) {
        bool beaten = false;
        for (std::size_t j = 0; j < reps.size() && !beaten; ++j)
            beaten = j != i && multiset_less(ms[j], ms[i], order) == Comparison::Less;
        if (!beaten)
            out.push_back(reps[i]);
    }
    return out;
}

inline Decision multiset_subset_bound_decision(const DataGraph& g, const std::vector<Constraint>& r, const std::string& d,
                                               const QuasiOrder& order, SearchOptions opt = {})
{
    try {
        for (const auto& h : multiset_preferred_subset_repairs(g, r, order, opt))
            if (bounded_by(h, d, order))
                return Decision::Yes;
        return Decision::No;
    } catch (const BudgetExceeded&) {
        return Decision::BudgetExceeded;
    }
}

} // namespace gxr
