#include "doctest.h"

#include "pcsp/instance.hpp"
#include "pcsp/solvers.hpp"
#include "pcsp/structure.hpp"

using namespace pcsp;

TEST_CASE("parse_instance handles the smallest well-formed input")
{
    const auto k3 = builtin_structure("k-coloring", {3});
    const auto sig = k3.signature();
    auto inst = parse_instance("instance\nvars x1 x3\nN(x1,x3)\nend\n", &sig);
    CHECK(inst.variables == std::vector<std::string>{"x1", "x3"});
    REQUIRE(inst.conjuncts.size() == 1);
    CHECK(inst.conjuncts[0].symbol == "N");
    CHECK(inst.conjuncts[0].args == std::vector<int>{0, 1});
}

TEST_CASE("parse_instance handles a two-relation sentence")
{
    // R(x1,x3) and S(x5,x2) and R(x3,x3) over a signature of two binary
    // relations, with five declared variables.
    Signature sig{{"R", 2}, {"S", 2}};
    auto inst = parse_instance("instance\n"
                               "vars x1 x2 x3 x4 x5\n"
                               "R(x1,x3)\n"
                               "S(x5,x2)\n"
                               "R(x3,x3)\n"
                               "end\n",
                               &sig);
    CHECK(inst.variables.size() == 5);
    REQUIRE(inst.conjuncts.size() == 3);
    CHECK(inst.conjuncts[2].args == std::vector<int>{2, 2});
}

TEST_CASE("parse_instance reports undeclared variables with position")
{
    try {
        parse_instance("instance\nvars x1\nN(x1,x9)\nend\n", nullptr);
        FAIL("expected ParseError");
    }
    catch (const ParseError & e) {
        CHECK(e.line() == 3);
        CHECK(std::string(e.what()).find("x9") != std::string::npos);
    }
}

TEST_CASE("parse_instance checks symbols and arities against a signature")
{
    Signature sig{{"N", 2}};
    CHECK_THROWS_AS(parse_instance("instance\nvars x\nM(x,x)\nend\n", &sig), ParseError);
    CHECK_THROWS_AS(parse_instance("instance\nvars x\nN(x)\nend\n", &sig), ParseError);
    CHECK_THROWS_AS(parse_instance("instance\nvars x\nN(x,x)\n", &sig), ParseError);
    CHECK_THROWS_AS(parse_instance("instance\nvars x x\nend\n", &sig), ParseError);
    // Without a signature only variable scoping is checked.
    CHECK_NOTHROW(parse_instance("instance\nvars x\nM(x,x)\nend\n", nullptr));
}

TEST_CASE("serialize_instance round-trips, preserving equalities")
{
    auto inst = parse_instance("instance\n"
                               "vars a b c\n"
                               "R(a,b,c)\n"
                               "eq a b\n"
                               "end\n",
                               nullptr);
    REQUIRE(inst.equalities.size() == 1);
    auto text = serialize_instance(inst);
    CHECK(text.find("eq a b") != std::string::npos);
    CHECK(parse_instance(text, nullptr) == inst);

    PPInstance empty;
    empty.variables = {"x", "y"};
    CHECK(parse_instance(serialize_instance(empty), nullptr) == empty);
}

TEST_CASE("normalize merges equality classes to the first-declared representative")
{
    SUBCASE("single equality")
    {
        auto inst = parse_instance("instance\nvars x y\nN(x,y)\neq x y\nend\n", nullptr);
        auto merged = normalize(inst);
        CHECK(merged.variables == std::vector<std::string>{"x"});
        REQUIRE(merged.conjuncts.size() == 1);
        CHECK(merged.conjuncts[0].args == std::vector<int>{0, 0});
        CHECK(merged.equalities.empty());
    }
    SUBCASE("no equalities is the identity")
    {
        auto inst = parse_instance("instance\nvars x y\nN(x,y)\nend\n", nullptr);
        CHECK(normalize(inst) == inst);
    }
    SUBCASE("chains close transitively")
    {
        auto inst = parse_instance("instance\nvars x y z\nR(x,z)\neq x y\neq y z\nend\n", nullptr);
        auto merged = normalize(inst);
        CHECK(merged.variables == std::vector<std::string>{"x"});
        CHECK(merged.conjuncts[0].args == std::vector<int>{0, 0});
    }
}

TEST_CASE("normalize is idempotent and preserves satisfiability")
{
    // Exhaustive at desk scale: all instances over the one-in-three
    // structure with 3 variables, up to two conjuncts, and every subset of
    // the three possible equalities.
    const auto onein3 = builtin_structure("onein3");
    std::vector<std::vector<int>> triples;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                triples.push_back({a, b, c});

    const std::vector<std::pair<int, int>> all_eqs = {{0, 1}, {0, 2}, {1, 2}};
    std::size_t cases = 0;
    for (std::size_t i = 0; i < triples.size(); ++i) {
        for (std::size_t j = i; j <= triples.size(); ++j) {
            for (int mask = 0; mask < 8; ++mask) {
                PPInstance inst;
                inst.variables = {"x", "y", "z"};
                inst.conjuncts.push_back({"R", triples[i]});
                if (j < triples.size())
                    inst.conjuncts.push_back({"R", triples[j]});
                for (int bit = 0; bit < 3; ++bit)
                    if (mask & (1 << bit))
                        inst.equalities.push_back(all_eqs[bit]);

                auto merged = normalize(inst);
                CHECK(merged.equalities.empty());
                CHECK(normalize(merged) == merged);
                CHECK(brute_force_decide(inst, onein3).has_value() ==
                      brute_force_decide(merged, onein3).has_value());
                ++cases;
            }
        }
    }
    CHECK(cases == 405 * 8); // 405 conjunct multisets of size one or two

}
