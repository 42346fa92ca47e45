#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "gxrepair/bitmatrix.hpp"
#include "gxrepair/error.hpp"
#include "gxrepair/expr.hpp"
#include "gxrepair/graph.hpp"

namespace gxr {

struct EvalOptions {
    std::uint32_t counter_limit = 10000;
};

// Dense view of a graph: nodes 0..n-1 in id order, data values interned, one
// adjacency matrix per edge label of Σ_e in alphabet order.
struct GraphIndex {
    const Alphabet* alphabet = nullptr;
    std::size_t n = 0;
    std::vector<std::uint32_t> data;
    std::vector<std::string> values;  // interned value names
    std::vector<BitMatrix> adj;       // one per alphabet label

    GraphIndex() = default;

    GraphIndex(const Alphabet& a, std::size_t nodes) : alphabet(&a), n(nodes), data(nodes, 0), adj(a.edge_labels().size(), BitMatrix(nodes)) {}

    std::uint32_t intern(const std::string& v)
    {
        for (std::size_t i = 0; i < values.size(); ++i)
            if (values[i] == v)
                return static_cast<std::uint32_t>(i);
        values.push_back(v);
        return static_cast<std::uint32_t>(values.size() - 1);
    }

    static GraphIndex of(const DataGraph& g)
    {
        GraphIndex x(g.alphabet(), g.node_count());
        std::map<std::string, std::size_t> pos;
        std::size_t i = 0;
        for (const auto& [id, v] : g.nodes()) {
            pos[id] = i;
            x.data[i++] = x.intern(v);
        }
        for (const auto& [pair, ls] : g.edges())
            for (const auto& l : ls)
                x.adj[*g.alphabet().label_index(l)].set(pos[pair.first], pos[pair.second]);
        return x;
    }
};

class Evaluator {
public:
    explicit Evaluator(const GraphIndex& g, EvalOptions opt = {}) : g_(g), opt_(opt) {}

    BitMatrix path(const PathExpr& p) const
    {
        const std::size_t n = g_.n;
        switch (p.kind) {
        case PathKind::Epsilon: return BitMatrix::identity(n);
        case PathKind::Wildcard: return any_edge();
        case PathKind::WildcardInverse: return any_edge().transposed();
        case PathKind::Label: return label(p.label);
        case PathKind::Inverse: return label(p.label).transposed();
        case PathKind::Test: {
            BitMatrix m(n);
            node(*p.test).for_each([&](std::size_t i) { m.set(i, i); });
            return m;
        }
        case PathKind::Concat: return path(*p.lhs).compose(path(*p.rhs));
        case PathKind::Union: {
            BitMatrix m = path(*p.lhs);
            m |= path(*p.rhs);
            return m;
        }
        case PathKind::Intersect: {
            BitMatrix m = path(*p.lhs);
            m &= path(*p.rhs);
            return m;
        }
        case PathKind::Star: return path(*p.lhs).closure();
        case PathKind::Plus: {
            BitMatrix m = path(*p.lhs);
            return m.compose(m.closure());
        }
        case PathKind::Complement: return path(*p.lhs).flip();
        case PathKind::Implies: {
            BitMatrix m = path(*p.lhs).flip();
            m |= path(*p.rhs);
            return m;
        }
        case PathKind::Counter: return counter(path(*p.lhs), p.min, p.max);
        }
        return BitMatrix(n);
    }

    BitSet node(const NodeExpr& e) const
    {
        const std::size_t n = g_.n;
        switch (e.kind) {
        case NodeKind::Not: return node(*e.lhs).flip();
        case NodeKind::And: {
            BitSet s = node(*e.lhs);
            s &= node(*e.rhs);
            return s;
        }
        case NodeKind::Or: {
            BitSet s = node(*e.lhs);
            s |= node(*e.rhs);
            return s;
        }
        case NodeKind::Implies: {
            BitSet s = node(*e.lhs).flip();
            s |= node(*e.rhs);
            return s;
        }
        case NodeKind::Exists: {
            BitMatrix m = path(*e.path);
            BitSet s(n);
            for (std::size_t i = 0; i < n; ++i)
                if (m.row(i).any())
                    s.set(i);
            return s;
        }
        case NodeKind::DataEq:
        case NodeKind::DataNeq: {
            BitSet s(n);
            for (std::size_t i = 0; i < n; ++i)
                if ((g_.values[g_.data[i]] == e.value) == (e.kind == NodeKind::DataEq))
                    s.set(i);
            return s;
        }
        case NodeKind::PathEq:
        case NodeKind::PathNeq: return compare(path(*e.path), path(*e.path2), e.kind == NodeKind::PathEq);
        }
        return BitSet(n);
    }

private:
    BitMatrix label(const std::string& l) const
    {
        auto idx = g_.alphabet->label_index(l);
        return idx ? g_.adj[*idx] : BitMatrix(g_.n);
    }

    BitMatrix any_edge() const
    {
        BitMatrix m(g_.n);
        for (const auto& a : g_.adj)
            m |= a;
        return m;
    }

    BitMatrix power(BitMatrix base, std::uint32_t k) const
    {
        BitMatrix r = BitMatrix::identity(g_.n);
        while (k) {
            if (k & 1u)
                r = r.compose(base);
            k >>= 1;
            if (k)
                base = base.compose(base);
        }
        return r;
    }

    BitMatrix counter(const BitMatrix& p, std::uint32_t lo, std::uint32_t hi) const
    {
        if (hi > opt_.counter_limit)
            throw EvalLimit("counter bound " + std::to_string(hi) + " exceeds the limit " + std::to_string(opt_.counter_limit));
        BitMatrix cur = power(p, lo);
        BitMatrix acc = cur;
        for (std::uint32_t k = lo; k < hi; ++k) {
            cur = cur.compose(p);
            acc |= cur;
        }
        return acc;
    }

    // Per source node: targets of p and q grouped by data value.
    BitSet compare(const BitMatrix& p, const BitMatrix& q, bool equal) const
    {
        const std::size_t n = g_.n;
        std::vector<BitSet> classes(g_.values.size(), BitSet(n));
        for (std::size_t i = 0; i < n; ++i)
            classes[g_.data[i]].set(i);
        BitSet s(n);
        for (std::size_t v = 0; v < n; ++v) {
            const BitSet& a = p.row(v);
            const BitSet& b = q.row(v);
            if (!a.any() || !b.any())
                continue;
            if (equal) {
                for (const auto& c : classes) {
                    if (a.intersects(c) && b.intersects(c)) {
                        s.set(v);
                        break;
                    }
                }
            } else {
                // Fails only when every target of p and q carries one common value.
                BitSet u = a;
                u |= b;
                bool single = false;
                for (const auto& c : classes) {
                    if (u.subset_of(c)) {
                        single = true;
                        break;
                    }
                }
                if (!single)
                    s.set(v);
            }
        }
        return s;
    }

    const GraphIndex& g_;
    EvalOptions opt_;
};

// Evaluation result tied to the node order of the graph it came from.
class PairRelation {
public:
    PairRelation(std::shared_ptr<const std::vector<std::string>> ids, BitMatrix m) : ids_(std::move(ids)), m_(std::move(m)) {}

    const std::vector<std::string>& nodes() const noexcept { return *ids_; }
    const BitMatrix& matrix() const noexcept { return m_; }

    bool contains(const std::string& from, const std::string& to) const
    {
        auto i = index(from), j = index(to);
        return i < ids_->size() && j < ids_->size() && m_.test(i, j);
    }

    std::vector<std::pair<std::string, std::string>> pairs() const
    {
        std::vector<std::pair<std::string, std::string>> out;
        for (std::size_t i = 0; i < ids_->size(); ++i)
            m_.row(i).for_each([&](std::size_t j) { out.emplace_back((*ids_)[i], (*ids_)[j]); });
        return out;
    }

    std::size_t size() const
    {
        std::size_t c = 0;
        for (std::size_t i = 0; i < ids_->size(); ++i)
            c += m_.row(i).count();
        return c;
    }

private:
    std::size_t index(const std::string& id) const
    {
        for (std::size_t i = 0; i < ids_->size(); ++i)
            if ((*ids_)[i] == id)
                return i;
        return ids_->size();
    }

    std::shared_ptr<const std::vector<std::string>> ids_;
    BitMatrix m_;
};

class NodeSet {
public:
    NodeSet(std::shared_ptr<const std::vector<std::string>> ids, BitSet s) : ids_(std::move(ids)), s_(std::move(s)) {}

    const std::vector<std::string>& nodes() const noexcept { return *ids_; }
    const BitSet& bits() const noexcept { return s_; }

    bool contains(const std::string& id) const
    {
        for (std::size_t i = 0; i < ids_->size(); ++i)
            if ((*ids_)[i] == id)
                return s_.test(i);
        return false;
    }

    std::vector<std::string> members() const
    {
        std::vector<std::string> out;
        s_.for_each([&](std::size_t i) { out.push_back((*ids_)[i]); });
        return out;
    }

    std::size_t size() const { return s_.count(); }

private:
    std::shared_ptr<const std::vector<std::string>> ids_;
    BitSet s_;
};

namespace detail {

inline std::shared_ptr<const std::vector<std::string>> node_ids(const DataGraph& g)
{
    auto ids = std::make_shared<std::vector<std::string>>();
    for (const auto& [id, _] : g.nodes())
        ids->push_back(id);
    return ids;
}

} // namespace detail

inline PairRelation eval_path(const DataGraph& g, const PathExpr& p, EvalOptions opt = {})
{
    GraphIndex x = GraphIndex::of(g);
    return PairRelation(detail::node_ids(g), Evaluator(x, opt).path(p));
}

inline NodeSet eval_node(const DataGraph& g, const NodeExpr& e, EvalOptions opt = {})
{
    GraphIndex x = GraphIndex::of(g);
    return NodeSet(detail::node_ids(g), Evaluator(x, opt).node(e));
}

inline PairRelation eval_path(const DataGraph& g, const PathPtr& p, EvalOptions opt = {}) { return eval_path(g, *p, opt); }
inline NodeSet eval_node(const DataGraph& g, const NodePtr& e, EvalOptions opt = {}) { return eval_node(g, *e, opt); }

} // namespace gxr
