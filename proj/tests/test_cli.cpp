#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "support/fixtures.hpp"

using namespace gxr;
namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

// Runs the tool in-process from the data directory, so file names in the
// arguments and in messages stay relative.
Run run(std::vector<std::string> args)
{
    struct Cwd {
        fs::path old = fs::current_path();
        Cwd() { fs::current_path(GXR_DATA_DIR); }
        ~Cwd() { fs::current_path(old); }
    } cwd;
    args.insert(args.begin(), "gxrepair");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string golden_path(const std::string& file) { return std::string(GXR_GOLDEN_DIR) + "/" + file; }

void match_golden(const std::string& file, const std::string& got)
{
    const std::string path = golden_path(file);
    if (std::getenv("GXR_UPDATE_GOLDEN")) {
        std::ofstream(path, std::ios::binary) << got;
        return;
    }
    INFO(file);
    REQUIRE(fs::exists(path));
    CHECK(detail::read_file(path) == got);
}

// Position of the graph operand: after "check"/"eval", or after the repair mode.
std::size_t graph_arg(const std::vector<std::string>& args) { return args[0] == "repair" ? 2 : 1; }

void check_graph_round_trip(const json& j, const std::vector<Constraint>* r, bool must_satisfy)
{
    const DataGraph h = graph_from_json_text(j.dump());
    CHECK(graph_to_json(h) == j);
    if (r && must_satisfy)
        CHECK(satisfies(h, *r));
}

void check_json_output(const std::vector<std::string>& args, const Run& res)
{
    const json j = json::parse(res.out);
    if (args[0] == "gen") {
        const DataGraph g = graph_from_json_text(j["graph"].dump());
        CHECK(graph_to_json(g) == j["graph"]);
        std::string text;
        for (const auto& l : j["constraints"])
            text += l.get<std::string>() + "\n";
        CHECK_NOTHROW(parse_constraints(text, g.alphabet()));
        if (j.contains("weights"))
            CHECK_NOTHROW(WeightFn::from_json_text(j["weights"].dump()));
        return;
    }
    const DataGraph g = gxt::load(args[graph_arg(args)]);
    if (args[0] == "eval")
        return;
    const auto r = gxt::constraints(args[graph_arg(args) + 1], g);
    if (args[0] == "check") {
        CHECK(j["consistent"].get<bool>() == (res.code == 0));
        CHECK(j["violations"].size() == check(g, r).violations.size());
        return;
    }
    if (j.contains("decision"))
        return;
    if (j.contains("repairs"))
        for (const auto& h : j["repairs"]) {
            check_graph_round_trip(h, &r, true);
            CHECK(subset_of(graph_from_json_text(h.dump()), g));
        }
    if (j.contains("repair") && !j["repair"].is_null()) {
        check_graph_round_trip(j["repair"], &r, true);
        const DataGraph h = graph_from_json_text(j["repair"].dump());
        const bool superset = args[1].find("superset") != std::string::npos || args[1] == "multiset-bound";
        CHECK((superset ? subset_of(g, h) : subset_of(h, g)));
        if (j.contains("weight"))
            CHECK(j["weight"].get<Weight>() ==
                  graph_weight(h, WeightFn::load(gxt::data_path(args[graph_arg(args) + 3]))));
    }
}

} // namespace

TEST_CASE("golden outputs", "[cli]")
{
    const json cases = json::parse(detail::read_file(golden_path("cases.json")));
    REQUIRE(cases.size() > 20);
    for (const auto& c : cases) {
        const std::string name = c["name"].get<std::string>();
        const auto args = c["args"].get<std::vector<std::string>>();
        const int want = c["exit"].get<int>();
        SECTION(name)
        {
            Run text = run(args);
            CHECK(text.code == want);
            if (want >= cli::usage)
                CHECK(text.err.rfind("error: ", 0) == 0);
            match_golden(name + ".txt", text.out);

            auto jargs = args;
            jargs.insert(jargs.begin(), "--json");
            Run js = run(jargs);
            CHECK(js.code == want);
            match_golden(name + ".json", js.out);
            if (want < cli::usage)
                check_json_output(args, js);
        }
    }
}

TEST_CASE("worked-example values in the goldens", "[cli]")
{
    const json fam = json::parse(detail::read_file(golden_path("family_check.json")));
    REQUIRE(fam["violations"].size() == 1);
    CHECK(fam["violations"][0]["pair"] == json::array({"María", "Julieta"}));

    const json film = json::parse(detail::read_file(golden_path("film_check.json")));
    CHECK(film["consistent"].get<bool>());

    const json net = json::parse(detail::read_file(golden_path("network_weight_superset.json")));
    CHECK(net["extra_weight"].get<Weight>() == 3);
}

TEST_CASE("usage errors", "[cli]")
{
    CHECK(run({}).code == cli::usage);
    CHECK(run({"repair"}).code == cli::usage);
    CHECK(run({"check", "family.json"}).code == cli::usage);
    CHECK(run({"frobnicate"}).code == cli::usage);
    CHECK(run({"eval", "family.json"}).code == cli::usage);
    CHECK(run({"eval", "family.json", "--path", "_", "--node", "<_>"}).code == cli::usage);
    CHECK(run({"--budget", "0", "check", "family.json", "family.gx"}).code == cli::usage);
    CHECK(run({"gen", "3sat", "bogus", "--cnf", "sat.cnf"}).code == cli::usage);
    CHECK(run({"--help"}).code == cli::ok);
}

TEST_CASE("load errors", "[cli]")
{
    Run missing = run({"check", "missing.json", "family.gx"});
    CHECK(missing.code == cli::load);
    CHECK(missing.err.find("missing.json") != std::string::npos);

    Run bad_expr = run({"eval", "family.json", "--path", "child_of ."});
    CHECK(bad_expr.code == cli::load);
    CHECK(bad_expr.err.find("1:11") != std::string::npos);

    CHECK(run({"check", "film.json", "family.gx"}).code == cli::load);
    CHECK(run({"gen", "3sat", "subset-path", "--cnf", "unsat_short.cnf"}).code == cli::load);
    CHECK(run({"gen", "3sat", "subset-path", "--cnf", "unsat_short.cnf", "--pad"}).code == cli::ok);
    CHECK(run({"repair", "weight-subset", "family.json", "family.gx", "--weights", "missing.json"}).code == cli::load);
    CHECK(run({"repair", "multiset-bound", "family.json", "family.gx", "--order", "network_weights.json", "--bound",
               "x"})
              .code == cli::load);
}

TEST_CASE("budget and unsupported exits", "[cli]")
{
    Run b = run({"--budget", "3", "repair", "subset", "family.json", "family.gx"});
    CHECK(b.code == cli::budget);
    CHECK(b.out.empty());
    CHECK(run({"--budget", "3", "repair", "weight-subset", "family.json", "family.gx", "--weights",
               "uniform_weights.json", "--k", "1"})
              .code == cli::budget);
    CHECK(run({"repair", "superset", "family.json", "unsupported.gx"}).code == cli::unsupported);
}

TEST_CASE("output file and generator directory", "[cli]")
{
    const fs::path dir = fs::temp_directory_path() / "gxrepair_cli_test";
    fs::remove_all(dir);
    fs::create_directories(dir);

    Run r = run({"--json", "--out", (dir / "check.json").string(), "check", "family.json", "family.gx"});
    CHECK(r.code == cli::negative);
    CHECK(r.out.empty());
    CHECK(json::parse(detail::read_file((dir / "check.json").string()))["consistent"] == false);

    Run g = run({"gen", "3sat", "weight-superset", "--cnf", "sat.cnf", "--out-dir", (dir / "inst").string()});
    REQUIRE(g.code == cli::ok);
    const DataGraph h = load_graph((dir / "inst" / "graph.json").string());
    auto cs = parse_constraints(detail::read_file((dir / "inst" / "constraints.gx").string()), h.alphabet());
    const WeightFn w = WeightFn::load((dir / "inst" / "weights.json").string());
    Instance inst = gen_weight_superset_instance(load_dimacs(gxt::data_path("sat.cnf")));
    CHECK(h == inst.graph);
    CHECK(cs.size() == inst.constraints.size());
    CHECK(g.out.find("k = " + std::to_string(*inst.k)) != std::string::npos);
    CHECK(graph_weight(h, w) == graph_weight(inst.graph, *inst.weights));
    fs::remove_all(dir);
}
