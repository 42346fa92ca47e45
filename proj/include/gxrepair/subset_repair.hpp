#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gxrepair/consistency.hpp"
#include "gxrepair/constraints.hpp"
#include "gxrepair/error.hpp"
#include "gxrepair/evaluator.hpp"
#include "gxrepair/graph.hpp"

namespace gxr {

struct SearchOptions {
    // Maximum number of removable atoms (nodes plus free edge entries).
    std::size_t budget = 20;
    EvalOptions eval{};
};

enum class Decision { Yes, No, BudgetExceeded };

inline const char* to_string(Decision d)
{
    switch (d) {
    case Decision::Yes: return "yes";
    case Decision::No: return "no";
    case Decision::BudgetExceeded: return "budget-exceeded";
    }
    return "?";
}

// Exhaustive search over the subgraphs of g.
//
// With the node set fixed, the constraints are monotone in every label that
// occurs only positively and antitone in every label that occurs only
// negatively. Entries of a positive-only label are therefore present in every
// maximal consistent subset (Fixed); the remaining entries are Free. When only
// existence matters, entries of negative-only labels can be dropped outright
// (Off), which shrinks the search further.
class SubsetSearch {
public:
    enum class Role { Fixed, Free, Off };

    struct Entry {
        std::size_t from;
        std::size_t to;
        std::size_t label;  // alphabet index
        Role role;
    };

    struct Candidate {
        std::uint64_t nodes = 0;
        std::uint64_t edges = 0;  // bit k = free entry k

        std::size_t size() const { return static_cast<std::size_t>(std::popcount(nodes) + std::popcount(edges)); }
        bool within(const Candidate& o) const { return !(nodes & ~o.nodes) && !(edges & ~o.edges); }
        friend bool operator==(const Candidate&, const Candidate&) = default;
    };

    SubsetSearch(const DataGraph& g, const std::vector<Constraint>& r, bool existence_only, SearchOptions opt = {})
        : g_(g), r_(r), opt_(opt)
    {
        for (const auto& [id, v] : g.nodes()) {
            ids_.push_back(id);
            values_.push_back(v);
        }
        const PolarityMap pol = label_polarity(r, g.alphabet());
        auto role_of = [&](const std::string& l) {
            auto it = pol.find(l);
            if (it == pol.end() || !it->second.negative)
                return Role::Fixed;
            if (!it->second.positive && existence_only)
                return Role::Off;
            return Role::Free;
        };
        // Atom count is measured in the enumeration space regardless of mode so that
        // the budget means the same thing for every operation.
        std::size_t enum_free = 0;
        for (const auto& [pair, ls] : g.edges()) {
            const std::size_t a = index_of(pair.first), b = index_of(pair.second);
            for (const auto& l : ls) {
                Role role = role_of(l);
                if (role != Role::Fixed)
                    ++enum_free;
                if (role == Role::Free)
                    free_.push_back(entries_.size());
                entries_.push_back({a, b, *g.alphabet().label_index(l), role});
            }
        }
        atoms_ = ids_.size() + enum_free;
        if (atoms_ > opt_.budget || ids_.size() > 62 || free_.size() > 62)
            throw BudgetExceeded("search space has " + std::to_string(atoms_) + " removable atoms; budget is " +
                                 std::to_string(opt_.budget));

        for (const auto& c : r) {
            PolarityMap cp = label_polarity(c, g.alphabet());
            bool up = false, down = false;
            for (const auto& [l, p] : cp) {
                if (role_of(l) != Role::Free)
                    continue;
                up = up || p.positive;
                down = down || p.negative;
            }
            if (!down)
                up_.push_back(c);
            else if (!up)
                down_.push_back(c);
        }
    }

    std::size_t atoms() const noexcept { return atoms_; }
    std::size_t node_count() const noexcept { return ids_.size(); }
    const std::vector<std::string>& ids() const noexcept { return ids_; }
    const std::vector<Entry>& entries() const noexcept { return entries_; }
    const std::vector<std::size_t>& free_entries() const noexcept { return free_; }

    Candidate full() const
    {
        Candidate c;
        c.nodes = ids_.empty() ? 0 : (ids_.size() == 64 ? ~0ull : (1ull << ids_.size()) - 1);
        c.edges = free_.empty() ? 0 : (1ull << free_.size()) - 1;
        return c;
    }

    // Free entries whose endpoints are both in the node mask.
    std::uint64_t free_within(std::uint64_t nodes) const
    {
        std::uint64_t m = 0;
        for (std::size_t k = 0; k < free_.size(); ++k) {
            const Entry& e = entries_[free_[k]];
            if ((nodes >> e.from & 1u) && (nodes >> e.to & 1u))
                m |= 1ull << k;
        }
        return m;
    }

    GraphIndex index(const Candidate& c) const
    {
        std::vector<std::size_t> pos(ids_.size(), 0);
        std::size_t n = 0;
        for (std::size_t i = 0; i < ids_.size(); ++i)
            if (c.nodes >> i & 1u)
                pos[i] = n++;
        GraphIndex x(g_.alphabet(), n);
        for (std::size_t i = 0; i < ids_.size(); ++i)
            if (c.nodes >> i & 1u)
                x.data[pos[i]] = x.intern(values_[i]);
        std::size_t k = 0;
        for (std::size_t e = 0; e < entries_.size(); ++e) {
            const Entry& en = entries_[e];
            bool chosen = false;
            if (en.role == Role::Free)
                chosen = c.edges >> k++ & 1u;
            else
                chosen = en.role == Role::Fixed;
            if (chosen && (c.nodes >> en.from & 1u) && (c.nodes >> en.to & 1u))
                x.adj[en.label].set(pos[en.from], pos[en.to]);
        }
        return x;
    }

    bool consistent(const Candidate& c) const { return satisfies(index(c), r_, opt_.eval); }

    DataGraph graph(const Candidate& c) const
    {
        DataGraph h(g_.alphabet_ptr());
        for (std::size_t i = 0; i < ids_.size(); ++i)
            if (c.nodes >> i & 1u)
                h.add_node(ids_[i], values_[i]);
        std::size_t k = 0;
        for (const Entry& en : entries_) {
            bool chosen = en.role == Role::Free ? (c.edges >> k++ & 1u) : en.role == Role::Fixed;
            if (chosen && (c.nodes >> en.from & 1u) && (c.nodes >> en.to & 1u))
                h.add_edge(ids_[en.from], ids_[en.to], g_.alphabet().edge_labels()[en.label]);
        }
        return h;
    }

    // Visit every consistent candidate containing `lower`. Node sets are visited
    // in decreasing size. The visitor returns false to stop.
    void for_each_consistent(const Candidate& lower, const std::function<bool(const Candidate&)>& visit) const
    {
        const std::uint64_t all = full().nodes;
        const std::uint64_t optional = all & ~lower.nodes;
        std::vector<std::uint64_t> masks;
        for (std::uint64_t s = optional;; s = (s - 1) & optional) {
            masks.push_back(s | lower.nodes);
            if (s == 0)
                break;
        }
        std::stable_sort(masks.begin(), masks.end(),
                         [](std::uint64_t a, std::uint64_t b) { return std::popcount(a) > std::popcount(b); });

        for (std::uint64_t nodes : masks) {
            const std::uint64_t avail = free_within(nodes);
            if (lower.edges & ~avail)
                continue;
            if (!prefilter(nodes, avail, lower.edges))
                continue;
            const std::uint64_t extra = avail & ~lower.edges;
            for (std::uint64_t s = extra;; s = (s - 1) & extra) {
                Candidate c{nodes, s | lower.edges};
                if (consistent(c) && !visit(c))
                    return;
                if (s == 0)
                    break;
            }
        }
    }

    // Maximal elements of the consistent candidates, largest first.
    std::vector<Candidate> maximal() const
    {
        std::vector<Candidate> found;
        for_each_consistent({}, [&](const Candidate& c) {
            found.push_back(c);
            return true;
        });
        std::sort(found.begin(), found.end(), [](const Candidate& a, const Candidate& b) {
            if (a.size() != b.size())
                return a.size() > b.size();
            if (a.nodes != b.nodes)
                return a.nodes > b.nodes;
            return a.edges > b.edges;
        });
        std::vector<Candidate> out;
        for (const auto& c : found) {
            bool dominated = std::any_of(out.begin(), out.end(), [&](const Candidate& m) { return c.within(m); });
            if (!dominated)
                out.push_back(c);
        }
        return out;
    }

    // A maximal consistent candidate containing the consistent candidate c.
    Candidate extend(const Candidate& c) const
    {
        Candidate best = c;
        for_each_consistent(c, [&](const Candidate& d) {
            if (d.size() > best.size())
                best = d;
            return true;
        });
        return best;
    }

private:
    std::size_t index_of(const std::string& id) const
    {
        return static_cast<std::size_t>(std::lower_bound(ids_.begin(), ids_.end(), id) - ids_.begin());
    }

    // Constraints monotone in the free entries must already hold with all of
    // them present, antitone ones with only the forced ones present.
    bool prefilter(std::uint64_t nodes, std::uint64_t avail, std::uint64_t forced) const
    {
        if (!up_.empty() && !satisfies(index({nodes, avail}), up_, opt_.eval))
            return false;
        if (!down_.empty() && !satisfies(index({nodes, forced}), down_, opt_.eval))
            return false;
        return true;
    }

    const DataGraph& g_;
    const std::vector<Constraint>& r_;
    SearchOptions opt_;
    std::vector<std::string> ids_;
    std::vector<std::string> values_;
    std::vector<Entry> entries_;
    std::vector<std::size_t> free_;
    std::vector<Constraint> up_;    // monotone in the free entries
    std::vector<Constraint> down_;  // antitone in the free entries
    std::size_t atoms_ = 0;
};

// Unique subset repair for positive node constraints: drop every node violating some constraint until nothing violates.
inline DataGraph subset_repair_positive_nodes(const DataGraph& g, const std::vector<Constraint>& r, EvalOptions opt = {})
{
    for (const auto& c : r)
        if (c.kind != ConstraintKind::Node || !is_positive(c))
            throw Unsupported("unique subset repair requires positive node constraints only");
    DataGraph h = g;
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
        for (const auto& [id, _] : h.nodes())
            if (ok.test(i++))
                keep.insert(id);
        h = induced_subgraph(h, keep);
    }
}

struct ExistsResult {
    Decision decision = Decision::No;
    std::optional<DataGraph> witness;  // a maximal nonempty consistent subset
};

inline ExistsResult exists_nontrivial_subset_repair(const DataGraph& g, const std::vector<Constraint>& r, SearchOptions opt = {})
{
    ExistsResult out;
    try {
        SubsetSearch probe(g, r, true, opt);
        std::optional<SubsetSearch::Candidate> hit;
        probe.for_each_consistent({}, [&](const SubsetSearch::Candidate& c) {
            if (c.nodes == 0)
                return true;
            hit = c;
            return false;
        });
        if (!hit)
            return out;
        // Re-express the witness in the enumeration space and grow it to a maximal subset.
        DataGraph w = probe.graph(*hit);
        SubsetSearch full(g, r, false, opt);
        SubsetSearch::Candidate c;
        for (std::size_t i = 0; i < full.node_count(); ++i)
            if (w.has_node(full.ids()[i]))
                c.nodes |= 1ull << i;
        const auto& free = full.free_entries();
        for (std::size_t k = 0; k < free.size(); ++k) {
            const auto& e = full.entries()[free[k]];
            if (w.has_edge(full.ids()[e.from], full.ids()[e.to], g.alphabet().edge_labels()[e.label]))
                c.edges |= 1ull << k;
        }
        out.decision = Decision::Yes;
        out.witness = full.graph(full.extend(c));
    } catch (const BudgetExceeded&) {
        out.decision = Decision::BudgetExceeded;
    }
    return out;
}

inline std::vector<DataGraph> enumerate_subset_repairs(const DataGraph& g, const std::vector<Constraint>& r, SearchOptions opt = {})
{
    SubsetSearch s(g, r, false, opt);
    std::vector<DataGraph> out;
    for (const auto& c : s.maximal())
        out.push_back(s.graph(c));
    return out;
}

} // namespace gxr
