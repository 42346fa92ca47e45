#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gxrepair/gxrepair.hpp"

namespace gxr::cli {
namespace {

using ojson = nlohmann::ordered_json;

struct Options {
    std::size_t budget = 20;
    bool json = false;
    std::string out_file;

    std::string graph;
    std::string constraints;
    std::string path_expr;
    std::string node_expr;
    std::string weights;
    std::optional<Weight> k;
    std::string order;
    std::string bound;
    bool subset = false;

    std::string mode;
    std::string cnf;
    bool pad = false;
    std::string out_dir;
};

// Errors that carry their own exit code.
struct Failure {
    int code;
    std::string message;
};

std::string file_context(const std::string& file, const std::exception& e) { return file + ":" + e.what(); }

DataGraph read_graph(const std::string& file)
{
    try {
        return load_graph(file);
    } catch (const LoadError& e) {
        throw Failure{load, file_context(file, e)};
    } catch (const AlphabetError& e) {
        throw Failure{load, file_context(file, e)};
    }
}

struct ConstraintFile {
    std::vector<Constraint> raw;
    std::vector<Constraint> r;
};

ConstraintFile read_constraints(const std::string& file, const DataGraph& g)
{
    std::string text;
    try {
        text = detail::read_file(file);
    } catch (const LoadError& e) {
        throw Failure{load, e.what()};
    }
    try {
        ConstraintFile c;
        c.raw = parse_constraints_raw(text, g.alphabet());
        for (const auto& x : c.raw)
            c.r.push_back(desugar(x, g.alphabet()));
        return c;
    } catch (const ParseError& e) {
        throw Failure{load, file_context(file, e)};
    }
}

template <class F>
auto read_aux(const std::string& file, F&& f)
{
    try {
        return f(file);
    } catch (const LoadError& e) {
        throw Failure{load, file_context(file, e)};
    } catch (const InvalidArgument& e) {
        throw Failure{load, file_context(file, e)};
    }
}

std::string quote_id(const std::string& s)
{
    if (s.find_first_of(" ,()") == std::string::npos)
        return s;
    return "\"" + s + "\"";
}

void print_graph(std::ostream& os, const DataGraph& g, const DataGraph* base = nullptr)
{
    os << "nodes (" << g.node_count() << "):\n";
    for (const auto& [id, v] : g.nodes()) {
        os << "  " << quote_id(id) << " = \"" << v << "\"";
        if (base && !base->has_node(id))
            os << "  [added]";
        os << "\n";
    }
    os << "edges (" << g.edge_entry_count() << "):\n";
    for (const auto& [pair, ls] : g.edges())
        for (const auto& l : ls) {
            os << "  " << quote_id(pair.first) << " -" << l << "-> " << quote_id(pair.second);
            if (base && !(base->has_node(pair.first) && base->has_node(pair.second) &&
                          base->has_edge(pair.first, pair.second, l)))
                os << "  [added]";
            os << "\n";
        }
}

SearchOptions search_options(const Options& o)
{
    SearchOptions s;
    s.budget = o.budget;
    return s;
}

int decision_exit(Decision d)
{
    switch (d) {
    case Decision::Yes: return ok;
    case Decision::No: return negative;
    case Decision::BudgetExceeded: return budget;
    }
    return negative;
}

int report_decision(std::ostream& os, const Options& o, Decision d)
{
    if (o.json)
        os << ojson{{"decision", to_string(d)}}.dump(2) << "\n";
    else
        os << to_string(d) << "\n";
    return decision_exit(d);
}

int cmd_check(const Options& o, std::ostream& os)
{
    const DataGraph g = read_graph(o.graph);
    const ConstraintFile c = read_constraints(o.constraints, g);
    const CheckResult res = check(g, c.r);
    if (o.json) {
        ojson j;
        j["consistent"] = res.consistent();
        j["violations"] = ojson::array();
        for (const auto& v : res.violations) {
            ojson x{{"constraint", v.constraint + 1}, {"kind", v.kind == ConstraintKind::Node ? "node" : "path"}};
            if (v.kind == ConstraintKind::Node)
                x["node"] = v.from;
            else
                x["pair"] = {v.from, v.to};
            j["violations"].push_back(x);
        }
        os << j.dump(2) << "\n";
    } else if (res.consistent()) {
        os << "consistent\n";
    } else {
        os << "inconsistent: " << res.violations.size() << " violation" << (res.violations.size() == 1 ? "" : "s")
           << "\n";
        for (const auto& v : res.violations) {
            os << "  constraint " << v.constraint + 1 << " (" << to_string(c.raw[v.constraint]) << ") fails at ";
            if (v.kind == ConstraintKind::Node)
                os << quote_id(v.from) << "\n";
            else
                os << "(" << quote_id(v.from) << ", " << quote_id(v.to) << ")\n";
        }
    }
    return res.consistent() ? ok : negative;
}

int cmd_eval(const Options& o, std::ostream& os)
{
    if (o.path_expr.empty() == o.node_expr.empty())
        throw Failure{usage, "eval needs exactly one of --path or --node"};
    const DataGraph g = read_graph(o.graph);
    try {
        if (!o.path_expr.empty()) {
            const PairRelation rel = eval_path(g, parse_path(o.path_expr, &g.alphabet()));
            if (o.json) {
                ojson j{{"pairs", ojson::array()}};
                for (const auto& [a, b] : rel.pairs())
                    j["pairs"].push_back({a, b});
                os << j.dump(2) << "\n";
            } else {
                for (const auto& [a, b] : rel.pairs())
                    os << "(" << quote_id(a) << ", " << quote_id(b) << ")\n";
            }
        } else {
            const NodeSet set = eval_node(g, parse_node(o.node_expr, &g.alphabet()));
            if (o.json)
                os << ojson{{"nodes", set.members()}}.dump(2) << "\n";
            else
                for (const auto& id : set.members())
                    os << quote_id(id) << "\n";
        }
    } catch (const ParseError& e) {
        throw Failure{load, std::string("expression:") + e.what()};
    }
    return ok;
}

bool node_constraints_only(const std::vector<Constraint>& r)
{
    for (const auto& c : r)
        if (c.kind != ConstraintKind::Node)
            return false;
    return true;
}

int cmd_subset(const Options& o, std::ostream& os)
{
    const DataGraph g = read_graph(o.graph);
    const ConstraintFile c = read_constraints(o.constraints, g);
    std::vector<DataGraph> reps;
    bool unique = node_constraints_only(c.r) && all_positive(c.r);
    if (unique)
        reps.push_back(subset_repair_positive_nodes(g, c.r));
    else
        reps = enumerate_subset_repairs(g, c.r, search_options(o));
    if (o.json) {
        ojson j{{"unique", unique}, {"repairs", ojson::array()}};
        for (const auto& h : reps)
            j["repairs"].push_back(graph_to_json(h));
        os << j.dump(2) << "\n";
        return ok;
    }
    os << reps.size() << " subset repair" << (reps.size() == 1 ? "" : "s") << (unique ? " (unique)" : "") << "\n";
    for (std::size_t i = 0; i < reps.size(); ++i) {
        os << "repair " << i + 1 << ":\n";
        print_graph(os, reps[i]);
    }
    return ok;
}

int report_repair(std::ostream& os, const Options& o, const DataGraph& g, const std::optional<DataGraph>& h,
                  const std::string& none, ojson extra = ojson::object())
{
    if (o.json) {
        ojson j = extra;
        j["repair"] = h ? graph_to_json(*h) : ojson(nullptr);
        os << j.dump(2) << "\n";
    } else if (!h) {
        os << none << "\n";
    } else {
        for (const auto& [k, v] : extra.items())
            os << k << ": " << v.dump() << "\n";
        print_graph(os, *h, &g);
    }
    return h ? ok : negative;
}

int cmd_superset(const Options& o, std::ostream& os)
{
    const DataGraph g = read_graph(o.graph);
    const ConstraintFile c = read_constraints(o.constraints, g);
    const SupersetResult res = node_constraints_only(c.r) ? superset_repair_node_positive(g, c.r)
                                                          : superset_repair(g, c.r, search_options(o));
    return report_repair(os, o, g, res.repair, "no superset repair");
}

int cmd_weight_subset(const Options& o, std::ostream& os)
{
    const DataGraph g = read_graph(o.graph);
    const ConstraintFile c = read_constraints(o.constraints, g);
    const WeightFn w = read_aux(o.weights, [](const std::string& f) { return WeightFn::load(f); });
    if (o.k)
        return report_decision(os, o, k_weight_subset_decision(g, c.r, w, *o.k, search_options(o)));
    const DataGraph h = weight_preferred_subset(g, c.r, w, search_options(o));
    return report_repair(os, o, g, h, "", ojson{{"weight", graph_weight(h, w)}});
}

int cmd_weight_superset(const Options& o, std::ostream& os)
{
    const DataGraph g = read_graph(o.graph);
    const ConstraintFile c = read_constraints(o.constraints, g);
    const WeightFn w = read_aux(o.weights, [](const std::string& f) { return WeightFn::load(f); });
    if (o.k)
        return report_decision(os, o, k_weight_superset_decision(g, c.r, w, *o.k, search_options(o)));
    const SupersetOptimum best = weight_preferred_superset(g, c.r, w, search_options(o));
    ojson extra = ojson::object();
    if (best.repair) {
        extra["weight"] = best.weight;
        extra["extra_weight"] = best.weight - graph_weight(g, w);
    }
    return report_repair(os, o, g, best.repair, "no superset repair", extra);
}

int cmd_multiset_bound(const Options& o, std::ostream& os)
{
    const DataGraph g = read_graph(o.graph);
    const ConstraintFile c = read_constraints(o.constraints, g);
    const QuasiOrder order = read_aux(o.order, [](const std::string& f) { return QuasiOrder::load(f); });
    if (o.subset)
        return report_decision(os, o, multiset_subset_bound_decision(g, c.r, o.bound, order, search_options(o)));
    const auto h = superset_repair_bound(g, c.r, o.bound, order, search_options(o));
    return report_repair(os, o, g, h, "no " + o.bound + "-bounded superset repair");
}

void write_file(const std::filesystem::path& p, const std::string& text)
{
    std::ofstream f(p, std::ios::binary);
    if (!f || !(f << text))
        throw Failure{load, "cannot write '" + p.string() + "'"};
}

int cmd_gen(const Options& o, std::ostream& os)
{
    const Cnf3 f = read_aux(o.cnf, [&](const std::string& file) { return load_dimacs(file, o.pad); });
    Instance inst = [&] {
        if (o.mode == "subset-path")
            return gen_subset_path_instance(f);
        if (o.mode == "subset-node")
            return gen_subset_node_instance(f);
        if (o.mode == "superset-infinite")
            return gen_superset_infinite_instance(f);
        return gen_weight_superset_instance(f);
    }();
    if (o.out_dir.empty()) {
        os << inst.to_json().dump(2) << "\n";
        return ok;
    }
    const std::filesystem::path dir(o.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw Failure{load, "cannot create '" + dir.string() + "': " + ec.message()};
    write_file(dir / "graph.json", graph_to_json_text(inst.graph));
    write_file(dir / "constraints.gx", inst.constraint_text());
    os << (dir / "graph.json").string() << "\n" << (dir / "constraints.gx").string() << "\n";
    if (inst.weights) {
        write_file(dir / "weights.json", inst.weights->to_json().dump(2) + "\n");
        os << (dir / "weights.json").string() << "\n";
    }
    if (inst.k)
        os << "k = " << *inst.k << "\n";
    return ok;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Consistency checking and repair of data-graphs under Reg-GXPath constraints", "gxrepair"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();
    app.add_option("--budget", o.budget, "Maximum number of atoms searched exhaustively")->check(CLI::PositiveNumber);
    app.add_flag("--json", o.json, "Machine-readable output");
    app.add_option("--out", o.out_file, "Write output to a file instead of stdout");

    auto graph_and_constraints = [&](CLI::App* sc) {
        sc->add_option("graph", o.graph, "Graph JSON file")->required();
        sc->add_option("constraints", o.constraints, "Constraint file")->required();
        sc->fallthrough();
    };

    CLI::App* check_cmd = app.add_subcommand("check", "Check a graph against constraints");
    graph_and_constraints(check_cmd);

    CLI::App* eval_cmd = app.add_subcommand("eval", "Evaluate one path or node expression");
    eval_cmd->add_option("graph", o.graph, "Graph JSON file")->required();
    eval_cmd->add_option("--path", o.path_expr, "Path expression");
    eval_cmd->add_option("--node", o.node_expr, "Node expression");
    eval_cmd->fallthrough();

    CLI::App* repair_cmd = app.add_subcommand("repair", "Compute repairs");
    repair_cmd->require_subcommand(1);
    repair_cmd->fallthrough();
    CLI::App* subset_cmd = repair_cmd->add_subcommand("subset", "All subset repairs");
    graph_and_constraints(subset_cmd);
    CLI::App* superset_cmd = repair_cmd->add_subcommand("superset", "A superset repair (positive constraints)");
    graph_and_constraints(superset_cmd);
    CLI::App* wsub_cmd = repair_cmd->add_subcommand("weight-subset", "Weight-preferred subset repair");
    CLI::App* wsup_cmd = repair_cmd->add_subcommand("weight-superset", "Weight-preferred superset repair");
    for (CLI::App* sc : {wsub_cmd, wsup_cmd}) {
        graph_and_constraints(sc);
        sc->add_option("--weights", o.weights, "Weight JSON file")->required();
        sc->add_option("--k", o.k, "Decide the K-weight problem instead");
    }
    CLI::App* ms_cmd = repair_cmd->add_subcommand("multiset-bound", "d-bounded multiset-preferred repair");
    graph_and_constraints(ms_cmd);
    ms_cmd->add_option("--order", o.order, "Order JSON file")->required();
    ms_cmd->add_option("--bound", o.bound, "Bounding symbol d")->required();
    ms_cmd->add_flag("--subset", o.subset, "Decide for subset repairs instead of finding a superset certificate");

    CLI::App* gen_cmd = app.add_subcommand("gen", "Generate reduction instances");
    gen_cmd->require_subcommand(1);
    gen_cmd->fallthrough();
    CLI::App* sat_cmd = gen_cmd->add_subcommand("3sat", "Instances from a 3-CNF formula");
    sat_cmd->add_option("mode", o.mode, "subset-path | subset-node | superset-infinite | weight-superset")
        ->required()
        ->check(CLI::IsMember({"subset-path", "subset-node", "superset-infinite", "weight-superset"}));
    sat_cmd->add_option("--cnf", o.cnf, "DIMACS CNF file")->required();
    sat_cmd->add_flag("--pad", o.pad, "Pad short clauses by repeating their last literal");
    sat_cmd->add_option("--out-dir", o.out_dir, "Write graph.json, constraints.gx and weights.json here");
    sat_cmd->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    }

    std::ostringstream buf;
    int code = ok;
    try {
        if (check_cmd->parsed())
            code = cmd_check(o, buf);
        else if (eval_cmd->parsed())
            code = cmd_eval(o, buf);
        else if (subset_cmd->parsed())
            code = cmd_subset(o, buf);
        else if (superset_cmd->parsed())
            code = cmd_superset(o, buf);
        else if (wsub_cmd->parsed())
            code = cmd_weight_subset(o, buf);
        else if (wsup_cmd->parsed())
            code = cmd_weight_superset(o, buf);
        else if (ms_cmd->parsed())
            code = cmd_multiset_bound(o, buf);
        else if (sat_cmd->parsed())
            code = cmd_gen(o, buf);
    } catch (const Failure& f) {
        err << "error: " << f.message << "\n";
        return f.code;
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << " (raise --budget)\n";
        return budget;
    } catch (const EvalLimit& e) {
        err << "error: " << e.what() << "\n";
        return budget;
    } catch (const Unsupported& e) {
        err << "error: " << e.what() << "\n";
        return unsupported;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return load;
    }

    if (o.out_file.empty()) {
        out << buf.str();
    } else {
        std::ofstream f(o.out_file, std::ios::binary);
        if (!f || !(f << buf.str())) {
            err << "error: cannot write '" << o.out_file << "'\n";
            return load;
        }
    }
    return code;
}

} // namespace gxr::cli
