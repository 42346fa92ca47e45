#pragma once

#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "gxrepair/gxrepair.hpp"

namespace gxt {

inline std::string data_path(const std::string& name) { return std::string(GXR_DATA_DIR) + "/" + name; }

inline gxr::DataGraph load(const std::string& name) { return gxr::load_graph(data_path(name)); }

inline std::vector<gxr::Constraint> constraints(const std::string& name, const gxr::DataGraph& g)
{
    return gxr::parse_constraints(gxr::detail::read_file(data_path(name)), g.alphabet());
}

inline std::vector<gxr::Constraint> parse(const std::string& text, const gxr::DataGraph& g)
{
    return gxr::parse_constraints(text, g.alphabet());
}

inline gxr::PathPtr path(const std::string& text, const gxr::Alphabet& a)
{
    return gxr::desugar(gxr::parse_path(text, &a), a);
}

inline gxr::NodePtr node(const std::string& text, const gxr::Alphabet& a)
{
    return gxr::desugar(gxr::parse_node(text, &a), a);
}

// Graph from (id, data) pairs and (from, label, to) triples.
inline gxr::DataGraph graph_of(const gxr::AlphabetPtr& a, const std::vector<std::pair<std::string, std::string>>& nodes,
                               const std::vector<std::tuple<std::string, std::string, std::string>>& edges)
{
    gxr::DataGraph g(a);
    for (const auto& [id, v] : nodes)
        g.add_node(id, v);
    for (const auto& [x, l, y] : edges)
        g.add_edge(x, y, l);
    return g;
}

} // namespace gxt
