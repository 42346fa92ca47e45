#pragma once

#include <cstddef>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>

#include <json.hpp>

#include "gxrepair/error.hpp"
#include "gxrepair/graph.hpp"

namespace gxr {

namespace detail {

// nlohmann::json keeps no source positions, so semantic errors are located by a
// second scan that records where every value starts, keyed by JSON pointer.
class JsonLocator {
public:
    explicit JsonLocator(const std::string& text) : text_(text)
    {
        try {
            skip_ws();
            value("");
        } catch (const std::out_of_range&) {
            // Malformed text is reported by the real parser.
        }
    }

    std::pair<std::size_t, std::size_t> at(const std::string& pointer) const
    {
        auto it = pos_.find(pointer);
        return it == pos_.end() ? std::pair<std::size_t, std::size_t>{0, 0} : line_col(it->second);
    }

    std::pair<std::size_t, std::size_t> line_col(std::size_t offset) const
    {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
            if (text_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        return {line, col};
    }

private:
    char peek() const { return text_.at(i_); }

    void skip_ws()
    {
        while (i_ < text_.size() && (text_[i_] == ' ' || text_[i_] == '\t' || text_[i_] == '\n' || text_[i_] == '\r'))
            ++i_;
    }

    std::string string_token()
    {
        std::string out;
        ++i_;
        while (peek() != '"') {
            if (peek() == '\\') {
                ++i_;
                out.push_back(peek());
            } else {
                out.push_back(peek());
            }
            ++i_;
        }
        ++i_;
        return out;
    }

    static std::string escape(const std::string& key)
    {
        std::string out;
        for (char c : key) {
            if (c == '~')
                out += "~0";
            else if (c == '/')
                out += "~1";
            else
                out.push_back(c);
        }
        return out;
    }

    void value(const std::string& pointer)
    {
        pos_.emplace(pointer, i_);
        char c = peek();
        if (c == '{') {
            ++i_;
            skip_ws();
            while (peek() != '}') {
                std::string key = string_token();
                skip_ws();
                ++i_; // ':'
                skip_ws();
                value(pointer + "/" + escape(key));
                skip_ws();
                if (peek() == ',') {
                    ++i_;
                    skip_ws();
                }
            }
            ++i_;
        } else if (c == '[') {
            ++i_;
            skip_ws();
            for (std::size_t k = 0; peek() != ']'; ++k) {
                value(pointer + "/" + std::to_string(k));
                skip_ws();
                if (peek() == ',') {
                    ++i_;
                    skip_ws();
                }
            }
            ++i_;
        } else if (c == '"') {
            string_token();
        } else {
            while (i_ < text_.size() && std::string_view(",]} \t\r\n").find(text_[i_]) == std::string_view::npos)
                ++i_;
        }
    }

    const std::string& text_;
    std::size_t i_ = 0;
    std::map<std::string, std::size_t> pos_;
};

inline nlohmann::json parse_json_text(const std::string& text)
{
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw LoadError(std::string("invalid JSON: ") + e.what(), line, col);
    }
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw LoadError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Typed access into a document with errors located at the offending value.
class JsonReader {
public:
    JsonReader(const std::string& text, const nlohmann::json& doc) : loc_(text), doc_(doc) {}

    [[noreturn]] void fail(const std::string& pointer, const std::string& what) const
    {
        auto [line, col] = loc_.at(pointer);
        throw LoadError(what + (pointer.empty() ? "" : " (at " + pointer + ")"), line, col);
    }

    const nlohmann::json& get(const std::string& pointer) const { return doc_.at(nlohmann::json::json_pointer(pointer)); }

    const nlohmann::json& member(const std::string& pointer, const std::string& key, nlohmann::json::value_t type) const
    {
        const auto& obj = get(pointer);
        if (!obj.is_object())
            fail(pointer, "expected an object");
        auto it = obj.find(key);
        if (it == obj.end())
            fail(pointer, "missing member '" + key + "'");
        if (it->type() != type && !(type == nlohmann::json::value_t::number_unsigned && it->is_number_integer()))
            fail(pointer + "/" + key, "member '" + key + "' has the wrong type");
        return *it;
    }

    std::string string_at(const std::string& pointer) const
    {
        const auto& v = get(pointer);
        if (!v.is_string())
            fail(pointer, "expected a string");
        return v.get<std::string>();
    }

private:
    JsonLocator loc_;
    const nlohmann::json& doc_;
};

} // namespace detail

// Graph JSON:
// {"sigma_e": [...], "sigma_n": {"kind": "finite", "values": [...]} | {"kind": "open"},
//  "nodes": [{"id": ..., "data": ...}], "edges": [{"from": ..., "to": ..., "labels": [...]}]}
inline DataGraph graph_from_json_text(const std::string& text)
{
    using vt = nlohmann::json::value_t;
    const nlohmann::json doc = detail::parse_json_text(text);
    detail::JsonReader rd(text, doc);
    if (!doc.is_object())
        rd.fail("", "graph document must be an object");

    std::vector<std::string> labels;
    const auto& se = rd.member("", "sigma_e", vt::array);
    for (std::size_t i = 0; i < se.size(); ++i)
        labels.push_back(rd.string_at("/sigma_e/" + std::to_string(i)));

    rd.member("", "sigma_n", vt::object);
    const std::string kind = rd.member("/sigma_n", "kind", vt::string).get<std::string>();
    AlphabetPtr alphabet;
    try {
        if (kind == "open") {
            alphabet = make_alphabet(Alphabet::open(labels));
        } else if (kind == "finite") {
            std::vector<std::string> values;
            const auto& vs = rd.member("/sigma_n", "values", vt::array);
            for (std::size_t i = 0; i < vs.size(); ++i)
                values.push_back(rd.string_at("/sigma_n/values/" + std::to_string(i)));
            alphabet = make_alphabet(Alphabet(labels, values));
        } else {
            rd.fail("/sigma_n/kind", "sigma_n kind must be \"finite\" or \"open\"");
        }
    } catch (const AlphabetError& e) {
        rd.fail("/sigma_e", e.what());
    }

    DataGraph g(alphabet);
    const auto& nodes = rd.member("", "nodes", vt::array);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const std::string p = "/nodes/" + std::to_string(i);
        const std::string id = rd.member(p, "id", vt::string).get<std::string>();
        const std::string value = rd.member(p, "data", vt::string).get<std::string>();
        // Reserved ids are accepted only in the exact form the builders emit, so
        // repair outputs load back while hand-written collisions are refused.
        if (id.rfind(reserved_node_prefix, 0) == 0 && id != value_node_id(value))
            rd.fail(p + "/id", "node id '" + id + "' uses the reserved prefix " + std::string(reserved_node_prefix));
        if (g.has_node(id))
            rd.fail(p + "/id", "duplicate node id '" + id + "'");
        if (!g.alphabet().has_value(value))
            rd.fail(p + "/data", "data value '" + value + "' is not in sigma_n");
        g.add_node(id, value);
    }

    if (doc.contains("edges")) {
        const auto& edges = rd.member("", "edges", vt::array);
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const std::string p = "/edges/" + std::to_string(i);
            const std::string from = rd.member(p, "from", vt::string).get<std::string>();
            const std::string to = rd.member(p, "to", vt::string).get<std::string>();
            if (!g.has_node(from))
                rd.fail(p + "/from", "unknown node '" + from + "'");
            if (!g.has_node(to))
                rd.fail(p + "/to", "unknown node '" + to + "'");
            const auto& ls = rd.member(p, "labels", vt::array);
            for (std::size_t k = 0; k < ls.size(); ++k) {
                const std::string lp = p + "/labels/" + std::to_string(k);
                const std::string l = rd.string_at(lp);
                if (!g.alphabet().has_label(l))
                    rd.fail(lp, "edge label '" + l + "' is not in sigma_e");
                g.add_edge(from, to, l);
            }
        }
    }
    return g;
}

inline DataGraph load_graph(const std::string& path) { return graph_from_json_text(detail::read_file(path)); }

inline nlohmann::ordered_json graph_to_json(const DataGraph& g)
{
    nlohmann::ordered_json j;
    j["sigma_e"] = g.alphabet().edge_labels();
    nlohmann::ordered_json sn;
    if (g.alphabet().is_open()) {
        sn["kind"] = "open";
    } else {
        sn["kind"] = "finite";
        sn["values"] = g.alphabet().data_values();
    }
    j["sigma_n"] = sn;
    j["nodes"] = nlohmann::ordered_json::array();
    for (const auto& [id, v] : g.nodes())
        j["nodes"].push_back({{"id", id}, {"data", v}});
    j["edges"] = nlohmann::ordered_json::array();
    for (const auto& [pair, ls] : g.edges())
        j["edges"].push_back({{"from", pair.first}, {"to", pair.second}, {"labels", ls}});
    return j;
}

inline std::string graph_to_json_text(const DataGraph& g) { return graph_to_json(g).dump(2) + "\n"; }

} // namespace gxr
