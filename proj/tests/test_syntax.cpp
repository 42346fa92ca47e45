#include <catch_amalgamated.hpp>

#include "support/fixtures.hpp"
#include "support/random.hpp"

using namespace gxr;
namespace P = gxr::path;
namespace N = gxr::node;

namespace {

const Alphabet& fam()
{
    static const Alphabet a({"child_of", "sibling_of", "nibling_of"}, {"Diego", "Mauro", "María", "Julieta"});
    return a;
}

const Alphabet& ab()
{
    static const Alphabet a({"a", "b"}, {"x", "y"});
    return a;
}

std::string parse_error(std::string_view text, const Alphabet* a = nullptr)
{
    try {
        parse_path(text, a);
    } catch (const ParseError& e) {
        return e.what();
    }
    return "no error";
}

} // namespace

TEST_CASE("parse core constructors", "[syntax]")
{
    CHECK(equal(parse_path("eps"), P::eps()));
    CHECK(equal(parse_path("_"), P::any()));
    CHECK(equal(parse_path("a^-"), P::inverse("a")));
    CHECK(equal(parse_path("a . b"), P::concat(P::label("a"), P::label("b"))));
    CHECK(equal(parse_path("a b"), P::concat(P::label("a"), P::label("b"))));
    CHECK(equal(parse_path("a & b"), P::meet(P::label("a"), P::label("b"))));
    CHECK(equal(parse_path("a*"), P::star(P::label("a"))));
    CHECK(equal(parse_path("a{2,3}"), P::counter(P::label("a"), 2, 3)));
    CHECK(equal(parse_path("!(a)"), P::complement(P::label("a"))));
    CHECK(equal(parse_path("[data=\"x\"]"), P::test(N::data_eq("x"))));
    CHECK(equal(parse_node("<a = b>"), N::path_eq(P::label("a"), P::label("b"))));
    CHECK(equal(parse_node("<a != b>"), N::path_neq(P::label("a"), P::label("b"))));
    CHECK(equal(parse_node("data!=\"x\""), N::data_neq("x")));
    CHECK(equal(parse_node("not data=\"x\""), N::negate(N::data_eq("x"))));
}

TEST_CASE("precedence", "[syntax]")
{
    // postfix > concatenation > & > | > =>
    CHECK(equal(parse_path("a b*"), P::concat(P::label("a"), P::star(P::label("b")))));
    CHECK(equal(parse_path("a b & b"), P::meet(P::concat(P::label("a"), P::label("b")), P::label("b"))));
    CHECK(equal(parse_path("a & b | a"), P::alt(P::meet(P::label("a"), P::label("b")), P::label("a"))));
    CHECK(equal(parse_path("a | b => a => b"),
                P::implies(P::alt(P::label("a"), P::label("b")), P::implies(P::label("a"), P::label("b")))));
    CHECK(equal(parse_node("data=\"x\" || data=\"y\" && data=\"x\""),
                N::either(N::data_eq("x"), N::both(N::data_eq("y"), N::data_eq("x")))));
}

TEST_CASE("parse_constraints examples", "[syntax]")
{
    SECTION("sibling symmetry")
    {
        auto r = parse_constraints("path: sibling_of => sibling_of^-", fam());
        REQUIRE(r.size() == 1);
        CHECK(r[0].kind == ConstraintKind::Path);
        CHECK(equal(r[0].path, P::alt(P::inverse("sibling_of"), P::complement(P::label("sibling_of")))));
    }
    SECTION("eps")
    {
        auto r = parse_constraints("path: eps", fam());
        CHECK(equal(r.at(0).path, P::eps()));
    }
    SECTION("node existence with a data test")
    {
        Alphabet a = Alphabet::open({"down"});
        auto r = parse_constraints("node: <down . [data=\"r\"]>", a);
        CHECK(equal(r.at(0).node, N::exists(P::concat(P::label("down"), P::test(N::data_eq("r"))))));
    }
    SECTION("comments, blank lines and order")
    {
        auto r = parse_constraints("# heading\n\npath: a # trailing\nnode: data=\"x#y\"\n", Alphabet({"a"}, {"x#y"}));
        REQUIRE(r.size() == 2);
        CHECK(r[0].kind == ConstraintKind::Path);
        CHECK(equal(r[1].node, N::data_eq("x#y")));
    }
}

TEST_CASE("parse errors carry positions", "[syntax]")
{
    CHECK(parse_error("a .") == "1:4: expected path expression, found end of input");
    CHECK(parse_error("a{3,2}").find("has n > m") != std::string::npos);
    CHECK(parse_error("zz", &ab()) == "1:1: unknown edge label 'zz'");
    CHECK(parse_error("a )").find("1:3:") == 0);
    CHECK_THROWS_AS(parse_node("<a"), ParseError);
    CHECK_THROWS_AS(parse_node("data=\"x"), ParseError);
    try {
        parse_constraints("path: a\nnode: a\n", ab());
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_constraints("edge: a", ab()), ParseError);
    CHECK_THROWS_AS(parse_constraints("node: data=\"q\"", ab()), ParseError);
}

TEST_CASE("desugar examples", "[syntax]")
{
    CHECK(equal(desugar(P::implies(P::eps(), P::eps()), ab()), P::alt(P::eps(), P::complement(P::eps()))));

    auto no_cycles = gxt::path("eps => !(_+)", ab());
    auto wild_plus = P::concat(P::any(), P::star(P::any()));
    CHECK(equal(no_cycles, P::alt(P::complement(wild_plus), P::complement(P::eps()))));

    CHECK(equal(desugar(P::any_inverse(), ab()), P::alt(P::inverse("a"), P::inverse("b"))));
    CHECK(equal(desugar(N::implies(N::data_eq("x"), N::data_eq("y")), ab()),
                N::either(N::data_eq("y"), N::negate(N::data_eq("x")))));
}

TEST_CASE("is_positive examples", "[syntax]")
{
    CHECK(is_positive(N::data_neq("c")));
    CHECK(is_positive(N::path_neq(P::label("a"), P::label("b"))));
    CHECK_FALSE(is_positive(P::complement(P::eps())));
    CHECK_FALSE(is_positive(N::negate(N::data_eq("x"))));
    Alphabet t5({"needs", "exists", "unique", "valid"}, {"bool", "clause"});
    CHECK(is_positive(gxt::path("valid | needs . valid", t5)));
}

TEST_CASE("random ASTs round-trip and desugar properties", "[syntax][property]")
{
    gxt::Rng rng(2024);
    Alphabet a({"a", "b", "c"}, {"x", "y", "z"});
    gxt::ExprGen gen(rng, a, {false, false, true});
    for (int i = 0; i < 500; ++i) {
        PathPtr p = gen.path(6);
        const std::string text = to_string(p);
        INFO(text);
        REQUIRE(equal(parse_path(text, &a), p));

        PathPtr d = desugar(p, a);
        REQUIRE(equal(desugar(d, a), d));

        NodePtr n = gen.node(6);
        REQUIRE(equal(parse_node(to_string(n), &a), n));
        REQUIRE(equal(desugar(desugar(n, a), a), desugar(n, a)));

        PathPtr q = gen.path(3);
        REQUIRE_FALSE(is_positive(desugar(P::implies(p, q), a)));
    }
}

TEST_CASE("constraint files round-trip through the printer", "[syntax]")
{
    for (const char* name : {"family", "film", "network"}) {
        DataGraph g = gxt::load(std::string(name) + ".json");
        auto r = gxt::constraints(std::string(name) + ".gx", g);
        auto again = parse_constraints(print_constraints(r), g.alphabet());
        REQUIRE(again.size() == r.size());
        for (std::size_t i = 0; i < r.size(); ++i)
            CHECK(equal(again[i], r[i]));
    }
}
