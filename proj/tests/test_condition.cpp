#include "doctest.h"

#include <algorithm>

#include "pcsp/condition.hpp"
#include "pcsp/oracles.hpp"
#include "pcsp/polymorphism.hpp"
#include "pcsp/structure.hpp"

using namespace pcsp;

namespace {

// p(x,x,y) = p(y,y,y), p(y,x,x) = p(y,y,y): the nesting-free companion of the
// Maltsev identities. Nontrivial; satisfied over the linear structure.
MinorCondition maltsev_minor()
{
    MinorCondition c;
    c.symbols = {{"p", 3}};
    c.equations = {
        {{"p", {"x", "x", "y"}}, {"p", {"y", "y", "y"}}},
        {{"p", {"y", "x", "x"}}, {"p", {"y", "y", "y"}}},
    };
    return c;
}

// The nesting-free companion of the majority identities.
MinorCondition majority_minor()
{
    MinorCondition c;
    c.symbols = {{"m", 3}};
    c.equations = {
        {{"m", {"x", "x", "y"}}, {"m", {"x", "x", "x"}}},
        {{"m", {"x", "y", "x"}}, {"m", {"x", "x", "x"}}},
        {{"m", {"y", "x", "x"}}, {"m", {"x", "x", "x"}}},
    };
    return c;
}

StrongMaltsevCondition majority_strong()
{
    // m(x,x,y) = x, m(x,y,x) = x, m(y,x,x) = x.
    StrongMaltsevCondition c;
    c.symbols = {{"m", 3}};
    auto app = [](std::vector<std::string> vars) {
        std::vector<Term> args;
        for (auto & v : vars)
            args.push_back(Term::variable(v));
        return Term::apply("m", std::move(args));
    };
    c.equations = {
        {app({"x", "x", "y"}), Term::variable("x")},
        {app({"x", "y", "x"}), Term::variable("x")},
        {app({"y", "x", "x"}), Term::variable("x")},
    };
    return c;
}

Interpretation single(const std::string & name, FunctionTable table)
{
    Interpretation i;
    i.in_domain = table.in_domain();
    i.out_domain = table.out_domain();
    i.tables.emplace(name, std::move(table));
    return i;
}

} // namespace

TEST_CASE("parse_condition classifies minor and nested conditions")
{
    auto minor = parse_condition("condition\n"
                                 "sym m 3\n"
                                 "eq m(x,x,y) = m(y,y,y)\n"
                                 "eq m(y,x,x) = m(y,y,y)\n"
                                 "end\n");
    CHECK(minor.symbols == std::vector<SymbolDecl>{{"m", 3}});
    CHECK(minor.equations.size() == 2);
    CHECK(as_minor(minor).has_value());

    auto nested = parse_condition("condition\n"
                                  "sym f 2\n"
                                  "sym g 2\n"
                                  "sym h 3\n"
                                  "eq f(g(f(x,y),y),z) = g(x,h(y,y,z))\n"
                                  "eq f(x,y) = g(g(x,y),x)\n"
                                  "end\n");
    CHECK(nested.equations.size() == 2);
    CHECK_FALSE(as_minor(nested).has_value());

    // Bare-variable sides are strong Maltsev but not minor.
    auto with_var_side = parse_condition("condition\nsym m 3\neq m(x,x,y) = x\nend\n");
    CHECK_FALSE(as_minor(with_var_side).has_value());

    CHECK_THROWS_AS(parse_condition("condition\nsym m 2\neq m(x,y) = m(x)\nend\n"), ParseError);
    CHECK_THROWS_AS(parse_condition("condition\nsym m 2\neq m(x,y) = n(x,y)\nend\n"), ParseError);
    CHECK_THROWS_AS(parse_condition("condition\nsym m 2\neq m(x,y) m(y,x)\nend\n"), ParseError);
    CHECK_THROWS_AS(parse_condition("condition\nsym m 2\n"), ParseError);
}

TEST_CASE("condition serialization round-trips")
{
    auto c = parse_condition("condition\n"
                             "sym f 2\n"
                             "sym h 3\n"
                             "eq f(h(x,y,z),x) = h(x,x,f(y,z))\n"
                             "eq f(x,x) = f(x,x)\n"
                             "end\n");
    auto again = parse_condition(serialize_condition(c));
    CHECK(again.symbols == c.symbols);
    CHECK(again.equations == c.equations);

    auto mc = maltsev_minor();
    auto round = as_minor(parse_condition(serialize_condition(mc)));
    REQUIRE(round.has_value());
    CHECK(*round == mc);
}

TEST_CASE("evaluate_term resolves variables, tables and nesting")
{
    Interpretation big = single("id", projection(1, 1, 9));
    CHECK(evaluate_term(Term::variable("x"), big, {{"x", 4}}) == 4);

    Interpretation maj = single("m", majority2());
    Term m_xyx = Term::apply("m", {Term::variable("x"), Term::variable("y"), Term::variable("x")});
    CHECK(evaluate_term(m_xyx, maj, {{"x", 0}, {"y", 1}}) == 0);

    Interpretation fg;
    fg.in_domain = 8;
    fg.out_domain = 8;
    fg.tables.emplace("f", projection(2, 1, 8));
    fg.tables.emplace("g", projection(2, 1, 8));
    Term nested = Term::apply(
        "g", {Term::apply("f", {Term::variable("x"), Term::variable("y")}), Term::variable("x")});
    CHECK(evaluate_term(nested, fg, {{"x", 7}, {"y", 3}}) == 7);

    // Nesting across distinct domains is meaningless.
    Interpretation hetero;
    hetero.in_domain = 2;
    hetero.out_domain = 3;
    hetero.tables.emplace("f", FunctionTable(2, 3, 2, {0, 1, 2, 0}));
    CHECK_THROWS_AS(evaluate_term(Term::apply("f", {nested, Term::variable("x")}), hetero,
                                  {{"x", 1}, {"y", 0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(evaluate_term(Term::variable("q"), maj, {{"x", 0}}), std::invalid_argument);
}

TEST_CASE("satisfies quantifies over every assignment")
{
    CHECK(satisfies(majority_strong(), single("m", majority2())));
    CHECK_FALSE(satisfies(majority_strong(), single("m", projection(3, 1, 2))));
    CHECK_FALSE(satisfies(majority_strong(), single("m", projection(3, 2, 2))));
    CHECK_FALSE(satisfies(majority_strong(), single("m", projection(3, 3, 2))));

    CHECK(satisfies(maltsev_minor(), single("p", affine_mod(5, {1, 4, 1}))));
    CHECK_FALSE(satisfies(maltsev_minor(), single("p", projection(3, 1, 5))));

    // A bare-variable side needs matching domains.
    Interpretation hetero;
    hetero.in_domain = 2;
    hetero.out_domain = 3;
    hetero.tables.emplace("m", FunctionTable(2, 3, 3, std::vector<int>(8, 0)));
    CHECK_THROWS_AS(satisfies(majority_strong(), hetero), std::invalid_argument);

    Interpretation missing;
    missing.in_domain = 2;
    missing.out_domain = 2;
    CHECK_THROWS_AS(satisfies(majority_strong(), missing), std::invalid_argument);
}

TEST_CASE("the two minor satisfaction paths agree")
{
    // Term evaluation vs direct cell linking, across assorted tables.
    std::vector<MinorCondition> conditions = {maltsev_minor(), majority_minor()};
    MinorCondition swap_fg;
    swap_fg.symbols = {{"f", 2}, {"g", 2}};
    swap_fg.equations = {{{"f", {"x", "y"}}, {"g", {"y", "x"}}}};
    conditions.push_back(swap_fg);

    std::uint64_t state = 99;
    auto next = [&] { return state = state * 6364136223846793005ull + 1442695040888963407ull; };
    for (const auto & c : conditions) {
        for (int trial = 0; trial < 40; ++trial) {
            Interpretation i;
            i.in_domain = 2;
            i.out_domain = 2;
            for (const auto & s : c.symbols) {
                std::vector<int> table(table_size(2, s.arity));
                for (auto & v : table)
                    v = static_cast<int>(next() % 2);
                i.tables.emplace(s.name, FunctionTable(2, 2, s.arity, std::move(table)));
            }
            CHECK(satisfies(c, i) == satisfies_minor_by_cells(c, i));
        }
    }
}

TEST_CASE("triviality verdicts on the pinned conditions")
{
    CHECK_FALSE(is_trivial(maltsev_minor()).has_value());
    CHECK_FALSE(is_trivial(majority_minor()).has_value());

    MinorCondition swap_fg;
    swap_fg.symbols = {{"f", 2}, {"g", 2}};
    swap_fg.equations = {{{"f", {"x", "y"}}, {"g", {"y", "x"}}}};
    auto w = is_trivial(swap_fg);
    REQUIRE(w.has_value());
    CHECK(w->at("f") == 1);
    CHECK(w->at("g") == 2);
    CHECK(satisfies(swap_fg, witness_interpretation(*w, swap_fg.symbols, 2)));

    // Vacuous condition: trivially trivial.
    MinorCondition vacuous;
    CHECK(is_trivial(vacuous).has_value());

    // No projections exist at arity zero.
    MinorCondition nullary;
    nullary.symbols = {{"c", 0}};
    CHECK_FALSE(is_trivial(nullary).has_value());
    CHECK_FALSE(is_trivial_by_projections(to_strong(nullary)).has_value());
}

TEST_CASE("syntactic triviality agrees with the projection-search oracle")
{
    // A small generated family: one binary and one ternary symbol, single
    // equations of every variable pattern.
    std::vector<MinorCondition> corpus;
    const std::vector<std::string> pool = {"x", "y", "z", "w", "u"};
    for (int mask = 0; mask < 3 * 3 * 3 * 3 * 3; ++mask) {
        int rest = mask;
        std::vector<std::string> vars;
        for (int i = 0; i < 5; ++i) {
            vars.push_back(pool[rest % 3]);
            rest /= 3;
        }
        MinorCondition c;
        c.symbols = {{"f", 2}, {"g", 3}};
        c.equations = {{{"f", {vars[0], vars[1]}}, {"g", {vars[2], vars[3], vars[4]}}}};
        corpus.push_back(std::move(c));
    }
    for (const auto & c : corpus) {
        auto fast = is_trivial(c);
        auto slow = is_trivial_by_projections(to_strong(c));
        CHECK(fast.has_value() == slow.has_value());
        if (fast)
            CHECK(satisfies(c, witness_interpretation(*fast, c.symbols, 2)));
    }
}

TEST_CASE("verdicts are stable under renaming of variables and symbols")
{
    auto renamed = maltsev_minor();
    for (auto & s : renamed.symbols)
        s.name = "q";
    for (auto & eq : renamed.equations) {
        eq.lhs.symbol = eq.rhs.symbol = "q";
        for (auto * side : {&eq.lhs, &eq.rhs})
            for (auto & v : side->vars)
                v = (v == "x") ? "alpha" : "beta";
    }
    CHECK(is_trivial(renamed).has_value() == is_trivial(maltsev_minor()).has_value());
    CHECK(satisfies(renamed, single("q", affine_mod(5, {1, 4, 1}))));
}

TEST_CASE("the nested projection-satisfiable condition is trivial")
{
    auto nested = parse_condition("condition\n"
                                  "sym f 2\n"
                                  "sym g 2\n"
                                  "sym h 3\n"
                                  "eq f(g(f(x,y),y),z) = g(x,h(y,y,z))\n"
                                  "eq f(x,y) = g(g(x,y),x)\n"
                                  "end\n");
    auto w = is_trivial_by_projections(nested);
    REQUIRE(w.has_value());
    CHECK(w->at("f") == 1);
    CHECK(w->at("g") == 1);
    CHECK(w->at("h") == 1);
    CHECK(satisfies(nested, witness_interpretation(*w, nested.symbols, 2)));
}

TEST_CASE("find_satisfying_interpretation on the linear structure")
{
    const auto lin5 = builtin_template("lin", {5});
    auto interp = find_satisfying_interpretation(maltsev_minor(), lin5, 3);
    REQUIRE(interp.has_value());
    CHECK(satisfies(maltsev_minor(), *interp));
    CHECK(is_polymorphism(interp->tables.at("p"), lin5));
    // The merge pattern pins the affine coefficients to (1,4,1).
    CHECK(interp->tables.at("p") == affine_mod(5, {1, 4, 1}));
}

TEST_CASE("trivial conditions are satisfiable over every built-in template")
{
    MinorCondition swap_fg;
    swap_fg.symbols = {{"f", 2}, {"g", 2}};
    swap_fg.equations = {{{"f", {"x", "y"}}, {"g", {"y", "x"}}}};
    REQUIRE(is_trivial(swap_fg).has_value());

    const char * specs[] = {"2sat", "3sat", "k-coloring:3", "onein3", "nae:2",
                            "onein3-vs-nae", "nae-vs-nae:2:3"};
    for (const char * spec : specs) {
        auto v = builtin_from_spec(spec);
        PcspTemplate t = std::holds_alternative<PcspTemplate>(v)
                             ? std::get<PcspTemplate>(std::move(v))
                             : make_csp_template(std::get<RelationalStructure>(std::move(v)));
        auto interp = find_satisfying_interpretation(swap_fg, t, 2);
        REQUIRE_MESSAGE(interp.has_value(), spec);
        CHECK(satisfies_minor_by_cells(swap_fg, *interp));
    }
}

TEST_CASE("no symmetric binary polymorphism of the 3-element clique")
{
    MinorCondition symmetric;
    symmetric.symbols = {{"f", 2}};
    symmetric.equations = {
        {{"f", {"x", "y"}}, {"f", {"y", "x"}}},
        {{"f", {"x", "x"}}, {"f", {"x", "x"}}}, // tautological equation
    };
    const auto k3 = builtin_template("k-coloring", {3});
    CHECK_FALSE(find_satisfying_interpretation(symmetric, k3, 2).has_value());
    // Independent confirmation by scanning all 3^9 binary tables.
    CHECK_FALSE(find_interpretation_exhaustive(symmetric, k3).has_value());
}

TEST_CASE("find_satisfying_interpretation validates inputs and budget")
{
    const auto k3 = builtin_template("k-coloring", {3});
    CHECK_THROWS_AS(find_satisfying_interpretation(maltsev_minor(), k3, 2),
                    std::invalid_argument); // arity 3 above the bound

    SearchBudget tiny(3);
    MinorCondition symmetric;
    symmetric.symbols = {{"f", 2}};
    symmetric.equations = {{{"f", {"x", "y"}}, {"f", {"y", "x"}}}};
    CHECK_THROWS_AS(find_satisfying_interpretation(symmetric, k3, 2, &tiny), ResourceLimitError);
}

TEST_CASE("interpretation text format round-trips")
{
    Interpretation i;
    i.in_domain = 2;
    i.out_domain = 2;
    i.tables.emplace("f", majority2());
    i.tables.emplace("g", projection(1, 1, 2));
    auto text = serialize_interpretation(i);
    auto parsed = parse_interpretation(text);
    CHECK(parsed.in_domain == 2);
    CHECK(parsed.tables.size() == 2);
    CHECK(parsed.tables.at("f") == majority2());
    CHECK(parsed.tables.at("g") == projection(1, 1, 2));

    CHECK_THROWS_AS(parse_interpretation("interpretation\ntable f 2 2 1\n0\nend\n"), ParseError);
    CHECK_THROWS_AS(parse_interpretation("table f 2 2 1\n0 1\nend\n"), ParseError);
}
