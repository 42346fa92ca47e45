#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gxrepair/error.hpp"

namespace gxr {

inline constexpr std::string_view reserved_node_prefix = "__v_";
inline constexpr std::string_view fresh_value_prefix = "__d";

inline bool is_keyword(std::string_view s) { return s == "eps" || s == "not" || s == "data"; }

// Edge labels must be printable as bare identifiers in the expression syntax.
inline bool is_identifier(std::string_view s)
{
    if (s.empty() || s == "_" || is_keyword(s))
        return false;
    auto word = [](unsigned char c) { return c == '_' || c >= 0x80 || (c >= '0' && c <= '9') || ((c | 0x20) >= 'a' && (c | 0x20) <= 'z'); };
    if (s[0] >= '0' && s[0] <= '9')
        return false;
    return std::all_of(s.begin(), s.end(), [&](char c) { return word(static_cast<unsigned char>(c)); });
}

class Alphabet {
public:
    // Finite data domain.
    Alphabet(std::vector<std::string> edge_labels, std::vector<std::string> data_values)
        : labels_(std::move(edge_labels)), values_(std::move(data_values)), open_(false)
    {
        validate();
    }

    // Countably infinite data domain.
    static Alphabet open(std::vector<std::string> edge_labels)
    {
        Alphabet a;
        a.labels_ = std::move(edge_labels);
        a.open_ = true;
        a.validate();
        return a;
    }

    const std::vector<std::string>& edge_labels() const noexcept { return labels_; }
    const std::vector<std::string>& data_values() const noexcept { return values_; }
    bool is_open() const noexcept { return open_; }

    bool has_label(std::string_view l) const { return std::find(labels_.begin(), labels_.end(), l) != labels_.end(); }

    bool has_value(std::string_view v) const
    {
        return open_ || std::find(values_.begin(), values_.end(), v) != values_.end();
    }

    std::optional<std::size_t> label_index(std::string_view l) const
    {
        auto it = std::find(labels_.begin(), labels_.end(), l);
        if (it == labels_.end())
            return std::nullopt;
        return static_cast<std::size_t>(it - labels_.begin());
    }

    // Up to `count` values of Σ_n not in `avoid`. Open mode generates __d1, __d2, ...
    // skipping observed tokens; finite mode takes unused values in alphabet order and
    // may return fewer than requested.
    std::vector<std::string> fresh_values(std::size_t count, const std::set<std::string>& avoid) const
    {
        std::vector<std::string> out;
        if (open_) {
            for (std::size_t i = 1; out.size() < count; ++i) {
                std::string v = std::string(fresh_value_prefix) + std::to_string(i);
                if (!avoid.count(v))
                    out.push_back(std::move(v));
            }
        } else {
            for (const auto& v : values_) {
                if (out.size() == count)
                    break;
                if (!avoid.count(v))
                    out.push_back(v);
            }
        }
        return out;
    }

    friend bool operator==(const Alphabet& a, const Alphabet& b)
    {
        return a.open_ == b.open_ && a.labels_ == b.labels_ && a.values_ == b.values_;
    }

private:
    Alphabet() = default;

    void validate() const
    {
        if (labels_.empty())
            throw AlphabetError("edge label alphabet must be nonempty");
        if (!open_ && values_.empty())
            throw AlphabetError("finite data alphabet must be nonempty");
        std::set<std::string> seen;
        for (const auto& l : labels_) {
            if (!is_identifier(l))
                throw AlphabetError("edge label '" + l + "' is not an identifier");
            if (!seen.insert(l).second)
                throw AlphabetError("duplicate edge label '" + l + "'");
        }
        std::set<std::string> vals;
        for (const auto& v : values_) {
            if (!vals.insert(v).second)
                throw AlphabetError("duplicate data value '" + v + "'");
            if (seen.count(v))
                throw AlphabetError("symbol '" + v + "' is both an edge label and a data value");
        }
    }

    std::vector<std::string> labels_;
    std::vector<std::string> values_;
    bool open_ = false;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

inline AlphabetPtr make_alphabet(Alphabet a) { return std::make_shared<const Alphabet>(std::move(a)); }

// A data-graph (V, L, D). Node ids are ordered lexicographically; label sets are
// stored only when nonempty, so structural equality is equality of graphs.
class DataGraph {
public:
    using Pair = std::pair<std::string, std::string>;
    using LabelSet = std::set<std::string>;

    explicit DataGraph(AlphabetPtr alphabet) : alphabet_(std::move(alphabet))
    {
        if (!alphabet_)
            throw InvalidArgument("graph requires an alphabet");
    }

    const Alphabet& alphabet() const noexcept { return *alphabet_; }
    const AlphabetPtr& alphabet_ptr() const noexcept { return alphabet_; }

    const std::map<std::string, std::string>& nodes() const noexcept { return data_; }
    const std::map<Pair, LabelSet>& edges() const noexcept { return edges_; }

    std::size_t node_count() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }
    bool has_node(const std::string& id) const { return data_.count(id) != 0; }

    const std::string& data(const std::string& id) const
    {
        auto it = data_.find(id);
        if (it == data_.end())
            throw InvalidArgument("unknown node '" + id + "'");
        return it->second;
    }

    const LabelSet& labels(const std::string& from, const std::string& to) const
    {
        static const LabelSet none;
        auto it = edges_.find({from, to});
        return it == edges_.end() ? none : it->second;
    }

    bool has_edge(const std::string& from, const std::string& to, const std::string& label) const
    {
        return labels(from, to).count(label) != 0;
    }

    // Number of (pair, label) entries.
    std::size_t edge_entry_count() const
    {
        std::size_t n = 0;
        for (const auto& [_, ls] : edges_)
            n += ls.size();
        return n;
    }

    std::set<std::string> data_values() const
    {
        std::set<std::string> out;
        for (const auto& [_, v] : data_)
            out.insert(v);
        return out;
    }

    void add_node(const std::string& id, const std::string& value)
    {
        if (id.empty())
            throw InvalidArgument("node id must be nonempty");
        if (!alphabet_->has_value(value))
            throw InvalidArgument("data value '" + value + "' is not in the data alphabet");
        if (!data_.emplace(id, value).second)
            throw InvalidArgument("duplicate node '" + id + "'");
    }

    void add_edge(const std::string& from, const std::string& to, const std::string& label)
    {
        if (!has_node(from) || !has_node(to))
            throw InvalidArgument("edge endpoint not in graph: " + from + " -> " + to);
        if (!alphabet_->has_label(label))
            throw InvalidArgument("edge label '" + label + "' is not in the edge alphabet");
        edges_[{from, to}].insert(label);
    }

    void remove_edge(const std::string& from, const std::string& to, const std::string& label)
    {
        auto it = edges_.find({from, to});
        if (it == edges_.end())
            return;
        it->second.erase(label);
        if (it->second.empty())
            edges_.erase(it);
    }

    void remove_node(const std::string& id)
    {
        data_.erase(id);
        for (auto it = edges_.begin(); it != edges_.end();) {
            if (it->first.first == id || it->first.second == id)
                it = edges_.erase(it);
            else
                ++it;
        }
    }

    friend bool operator==(const DataGraph& a, const DataGraph& b)
    {
        return *a.alphabet_ == *b.alphabet_ && a.data_ == b.data_ && a.edges_ == b.edges_;
    }

private:
    AlphabetPtr alphabet_;
    std::map<std::string, std::string> data_;
    std::map<Pair, LabelSet> edges_;
};

inline void require_same_alphabet(const DataGraph& g, const DataGraph& h)
{
    if (!(g.alphabet() == h.alphabet()))
        throw AlphabetError("graphs are over different alphabets");
}

inline bool subset_of(const DataGraph& g, const DataGraph& h)
{
    require_same_alphabet(g, h);
    for (const auto& [id, value] : g.nodes()) {
        auto it = h.nodes().find(id);
        if (it == h.nodes().end() || it->second != value)
            return false;
    }
    for (const auto& [pair, ls] : g.edges()) {
        const auto& hl = h.labels(pair.first, pair.second);
        if (!std::includes(hl.begin(), hl.end(), ls.begin(), ls.end()))
            return false;
    }
    return true;
}

inline std::string value_node_id(const std::string& value) { return std::string(reserved_node_prefix) + value; }

// Merge all nodes carrying value d into one node; incident label sets are unioned.
// A class of one node is left untouched; an empty class is an error.
inline DataGraph contract_nodes(const DataGraph& g, const std::string& d)
{
    std::set<std::string> cls;
    for (const auto& [id, v] : g.nodes())
        if (v == d)
            cls.insert(id);
    if (cls.empty())
        throw InvalidArgument("no node carries data value '" + d + "'");
    if (cls.size() == 1)
        return g;
    const std::string merged = value_node_id(d);
    if (g.has_node(merged) && !cls.count(merged))
        throw InvalidArgument("node id '" + merged + "' already in use");

    DataGraph h(g.alphabet_ptr());
    auto image = [&](const std::string& id) { return cls.count(id) ? merged : id; };
    for (const auto& [id, v] : g.nodes())
        if (!cls.count(id))
            h.add_node(id, v);
    h.add_node(merged, d);
    for (const auto& [pair, ls] : g.edges())
        for (const auto& l : ls)
            h.add_edge(image(pair.first), image(pair.second), l);
    return h;
}

// g plus one node "__v_<value>" per value in `values`, plus every label of
// `edge_set` on every ordered pair of the result (self-loops included).
inline DataGraph build_graph(const DataGraph& g, const std::vector<std::string>& values,
                             const std::vector<std::string>& edge_set)
{
    DataGraph h = g;
    const std::set<std::string> present = g.data_values();
    for (const auto& l : edge_set)
        if (!g.alphabet().has_label(l))
            throw InvalidArgument("edge label '" + l + "' is not in the edge alphabet");
    for (const auto& v : values) {
        if (present.count(v))
            throw InvalidArgument("data value '" + v + "' already occurs in the graph");
        const std::string id = value_node_id(v);
        if (h.has_node(id))
            throw InvalidArgument("node id '" + id + "' already in use");
        h.add_node(id, v);
    }
    std::vector<std::string> ids;
    for (const auto& [id, _] : h.nodes())
        ids.push_back(id);
    for (const auto& a : ids)
        for (const auto& b : ids)
            for (const auto& l : edge_set)
                h.add_edge(a, b, l);
    return h;
}

inline DataGraph induced_subgraph(const DataGraph& g, const std::set<std::string>& keep)
{
    DataGraph h(g.alphabet_ptr());
    for (const auto& [id, v] : g.nodes())
        if (keep.count(id))
            h.add_node(id, v);
    for (const auto& [pair, ls] : g.edges())
        if (keep.count(pair.first) && keep.count(pair.second))
            for (const auto& l : ls)
                h.add_edge(pair.first, pair.second, l);
    return h;
}

} // namespace gxr
