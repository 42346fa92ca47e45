#include <catch_amalgamated.hpp>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"

using namespace gxr;
namespace P = gxr::path;
namespace N = gxr::node;

TEST_CASE("node-dropping subset repair examples", "[subset]")
{
    auto a = make_alphabet(Alphabet({"l"}, {"a", "b"}));

    DataGraph ok = gxt::graph_of(a, {{"v", "a"}}, {{"v", "l", "v"}});
    CHECK(subset_repair_positive_nodes(ok, {Constraint::of(N::exists(P::label("l")))}) == ok);

    DataGraph v = gxt::graph_of(a, {{"v", "a"}}, {});
    CHECK(subset_repair_positive_nodes(v, {Constraint::of(N::data_eq("b"))}).empty());

    DataGraph ab = gxt::graph_of(a, {{"a", "a"}, {"b", "b"}}, {{"a", "l", "b"}});
    CHECK(subset_repair_positive_nodes(ab, {Constraint::of(N::exists(P::label("l")))}).empty());

    CHECK_THROWS_AS(subset_repair_positive_nodes(ab, {Constraint::of(P::label("l"))}), Unsupported);
    CHECK_THROWS_AS(subset_repair_positive_nodes(ab, {Constraint::of(N::negate(N::data_eq("a")))}), Unsupported);
}

TEST_CASE("node-dropping subset repair keeps a surviving core", "[subset]")
{
    auto a = make_alphabet(Alphabet({"l"}, {"x"}));
    // u <-> w cycle survives; t -> u survives; s has no successor and falls.
    DataGraph g = gxt::graph_of(a, {{"s", "x"}, {"t", "x"}, {"u", "x"}, {"w", "x"}},
                                {{"t", "l", "u"}, {"u", "l", "w"}, {"w", "l", "u"}});
    DataGraph h = subset_repair_positive_nodes(g, {Constraint::of(N::exists(P::label("l")))});
    CHECK(h == induced_subgraph(g, {"t", "u", "w"}));
}

TEST_CASE("exists_nontrivial_subset_repair", "[subset]")
{
    DataGraph film = gxt::load("film.json");
    auto fr = gxt::constraints("film.gx", film);
    ExistsResult res = exists_nontrivial_subset_repair(film, fr);
    CHECK(res.decision == Decision::Yes);
    REQUIRE(res.witness);
    CHECK(*res.witness == film);

    Cnf3 sat{1, {{1, 1, 1}}};
    Instance i1 = gen_subset_path_instance(sat);
    CHECK(exists_nontrivial_subset_repair(i1.graph, i1.constraints).decision == Decision::Yes);

    Cnf3 unsat{1, {{1, 1, 1}, {-1, -1, -1}}};
    Instance i2 = gen_subset_path_instance(unsat);
    CHECK(exists_nontrivial_subset_repair(i2.graph, i2.constraints).decision == Decision::No);
}

TEST_CASE("nontrivial witness is a maximal consistent subset", "[subset]")
{
    Cnf3 f{2, {{1, 2, 2}, {-1, -2, -2}}};
    Instance inst = gen_subset_path_instance(f);
    ExistsResult res = exists_nontrivial_subset_repair(inst.graph, inst.constraints);
    REQUIRE(res.decision == Decision::Yes);
    REQUIRE(res.witness);
    CHECK_FALSE(res.witness->empty());
    CHECK(subset_of(*res.witness, inst.graph));
    CHECK(satisfies(*res.witness, inst.constraints));
    auto reps = enumerate_subset_repairs(inst.graph, inst.constraints, {40, {}});
    CHECK(gxt::contains_graph(reps, *res.witness));
}

TEST_CASE("family subset repairs", "[subset]")
{
    DataGraph g = gxt::load("family.json");
    auto r = gxt::constraints("family.gx", g);
    auto reps = enumerate_subset_repairs(g, r);

    DataGraph drop_child = g;
    drop_child.remove_edge("María", "Diego", "child_of");
    DataGraph drop_siblings = g;
    drop_siblings.remove_edge("Diego", "Julieta", "sibling_of");
    drop_siblings.remove_edge("Julieta", "Diego", "sibling_of");
    CHECK(gxt::contains_graph(reps, drop_child));
    CHECK(gxt::contains_graph(reps, drop_siblings));
    CHECK(gxt::same_graph_sets(reps, gxt::brute_subset_repairs(g, r)));
}

TEST_CASE("enumerate_subset_repairs edge cases", "[subset]")
{
    DataGraph fam = gxt::load("family.json");
    auto r = gxt::constraints("family.gx", fam);
    DataGraph empty(fam.alphabet_ptr());
    auto reps = enumerate_subset_repairs(empty, r);
    REQUIRE(reps.size() == 1);
    CHECK(reps[0].empty());

    CHECK_THROWS_AS(enumerate_subset_repairs(fam, r, {3, {}}), BudgetExceeded);
    CHECK(exists_nontrivial_subset_repair(fam, r, {3, {}}).decision == Decision::BudgetExceeded);
}

TEST_CASE("unique repair for positive node constraints", "[subset][property]")
{
    gxt::Rng rng(41);
    auto a = gxt::small_alphabet(2, 3);
    gxt::ExprGen gen(rng, *a, {true, false, false});
    for (int i = 0; i < 60; ++i) {
        DataGraph g = gxt::random_graph(rng, a, 0, 3, 0.3);
        if (gxt::atoms_of(g).size() > 14)
            continue;
        std::vector<Constraint> r{Constraint::of(gen.node(3))};
        DataGraph alg = subset_repair_positive_nodes(g, r);
        auto brute = gxt::brute_subset_repairs(g, r);
        REQUIRE(brute.size() == 1);
        REQUIRE(alg == brute[0]);
        auto reps = enumerate_subset_repairs(g, r);
        REQUIRE(reps.size() == 1);
        REQUIRE(reps[0] == alg);
    }
}

TEST_CASE("enumeration matches brute force", "[subset][property]")
{
    gxt::Rng rng(43);
    auto a = gxt::small_alphabet(2, 2);
    gxt::ExprGen gen(rng, *a, {false, false, true});
    int done = 0;
    while (done < 80) {
        DataGraph g = gxt::random_graph(rng, a, 1, 3, 0.3);
        if (gxt::atoms_of(g).size() > 12)
            continue;
        std::vector<Constraint> r{desugar(gen.constraint(3), *a)};
        auto reps = enumerate_subset_repairs(g, r);
        auto brute = gxt::brute_subset_repairs(g, r);
        INFO(to_string(r[0]));
        REQUIRE(gxt::same_graph_sets(reps, brute));
        const bool nontrivial = std::any_of(brute.begin(), brute.end(), [](const DataGraph& h) { return !h.empty(); });
        REQUIRE((exists_nontrivial_subset_repair(g, r).decision == Decision::Yes) == nontrivial);
        ++done;
    }
}
