#include "doctest.h"

#include <algorithm>
#include <set>

#include "pcsp/structure.hpp"

using namespace pcsp;

namespace {

// Brute force over all |b|^|a| maps, the oracle find_homomorphism is checked
// against.
bool hom_exists_by_enumeration(const RelationalStructure & a, const RelationalStructure & b)
{
    HomMap h(a.domain_size, 0);
    while (true) {
        bool ok = true;
        for (const auto & ra : a.relations) {
            const Relation * rb = b.find_relation(ra.symbol);
            for (const auto & t : ra.tuples) {
                std::vector<int> image;
                for (int e : t)
                    image.push_back(h[e]);
                if (! std::binary_search(rb->tuples.begin(), rb->tuples.end(), image)) {
                    ok = false;
                    break;
                }
            }
            if (! ok)
                break;
        }
        if (ok)
            return true;
        int i = a.domain_size - 1;
        while (i >= 0 && h[i] == b.domain_size - 1)
            h[i--] = 0;
        if (i < 0)
            return false;
        ++h[i];
    }
}

} // namespace

TEST_CASE("validate_structure accepts built-ins and reports violations")
{
    CHECK(validate_structure(builtin_structure("k-coloring", {3})).empty());
    CHECK(validate_structure(builtin_structure("2sat")).empty());
    CHECK(validate_structure(builtin_structure("3sat")).empty());
    CHECK(validate_structure(builtin_structure("onein3")).empty());
    CHECK(validate_structure(builtin_structure("nae", {2})).empty());
    CHECK(validate_structure(builtin_structure("lin", {3})).empty());

    RelationalStructure out_of_range{"bad", 2, {Relation{"R", 2, {{0, 2}}}}};
    auto report = validate_structure(out_of_range);
    REQUIRE(report.size() == 1);
    CHECK(report[0].find("out-of-range") != std::string::npos);

    RelationalStructure arity_mismatch{"bad", 3, {Relation{"R", 3, {{0, 1}}}}};
    report = validate_structure(arity_mismatch);
    REQUIRE(report.size() == 1);
    CHECK(report[0].find("length") != std::string::npos);

    RelationalStructure duplicate{"bad", 2, {Relation{"R", 1, {}}, Relation{"R", 1, {}}}};
    report = validate_structure(duplicate);
    REQUIRE(report.size() == 1);
    CHECK(report[0].find("duplicate") != std::string::npos);
}

TEST_CASE("is_homomorphism on colorings")
{
    const auto k2 = builtin_structure("k-coloring", {2});
    const auto k3 = builtin_structure("k-coloring", {3});

    CHECK(is_homomorphism({0, 1, 2}, k3, k3));
    CHECK(is_homomorphism({0, 1}, k2, k3));
    CHECK_FALSE(is_homomorphism({0, 0, 0}, k3, k3));

    CHECK_THROWS_AS(is_homomorphism({0, 1}, k2, builtin_structure("onein3")),
                    std::invalid_argument);
    CHECK_THROWS_AS(is_homomorphism({0}, k3, k3), std::invalid_argument);
}

TEST_CASE("find_homomorphism agrees with map enumeration")
{
    const auto k2 = builtin_structure("k-coloring", {2});
    const auto k3 = builtin_structure("k-coloring", {3});

    auto up = find_homomorphism(k2, k3);
    REQUIRE(up.has_value());
    CHECK(is_homomorphism(*up, k2, k3));
    CHECK((*up)[0] != (*up)[1]); // any homomorphism K_2 -> K_3 is injective
    CHECK(hom_exists_by_enumeration(k2, k3));

    CHECK_FALSE(find_homomorphism(k3, k2).has_value()); // K_3 is not 2-colorable
    CHECK_FALSE(hom_exists_by_enumeration(k3, k2));

    const auto t = builtin_template("onein3-vs-nae");
    auto identity = find_homomorphism(t.yes, t.no);
    REQUIRE(identity.has_value());
    CHECK(*identity == HomMap{0, 1});
}

TEST_CASE("find_homomorphism honors the node budget")
{
    const auto k3 = builtin_structure("k-coloring", {3});
    SearchBudget tiny(2);
    CHECK_THROWS_AS(find_homomorphism(k3, k3, &tiny), ResourceLimitError);
}

TEST_CASE("built-in structures match their defining examples")
{
    const auto k3 = builtin_structure("k-coloring", {3});
    CHECK(k3.domain_size == 3);
    REQUIRE(k3.relations.size() == 1);
    CHECK(k3.relations[0].symbol == "N");
    CHECK(k3.relations[0].tuples.size() == 6);

    const auto onein3 = builtin_structure("onein3");
    CHECK(onein3.domain_size == 2);
    REQUIRE(onein3.relations.size() == 1);
    CHECK(onein3.relations[0].tuples ==
          std::vector<std::vector<int>>{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}});

    const auto sat2 = builtin_structure("2sat");
    REQUIRE(sat2.relations.size() == 4);
    for (const auto & r : sat2.relations)
        CHECK(r.tuples.size() == 3);
    CHECK(sat2.find_relation("R_01") != nullptr);

    const auto sat3 = builtin_structure("3sat");
    REQUIRE(sat3.relations.size() == 8);
    for (const auto & r : sat3.relations)
        CHECK(r.tuples.size() == 7);

    const auto nae2 = builtin_structure("nae", {2});
    CHECK(nae2.relations[0].tuples.size() == 6);
}

TEST_CASE("lin builtin: 625 relations with the counts forced by the equations")
{
    const auto lin5 = builtin_structure("lin", {5});
    CHECK(lin5.domain_size == 5);
    REQUIRE(lin5.relations.size() == 625);

    // Any equation with a nonzero coefficient triple has exactly 25
    // solutions; 0x+0y+0z = d is full for d = 0 and empty otherwise.
    const Relation * r1234 = lin5.find_relation("L_1234");
    REQUIRE(r1234 != nullptr);
    CHECK(r1234->tuples.size() == 25);
    for (const auto & t : r1234->tuples)
        CHECK((1 * t[0] + 2 * t[1] + 3 * t[2]) % 5 == 4);

    std::size_t degenerate_full = 0, degenerate_empty = 0;
    for (const auto & r : lin5.relations) {
        if (r.symbol.compare(0, 5, "L_000") == 0) {
            if (r.tuples.size() == 125)
                ++degenerate_full;
            else if (r.tuples.empty())
                ++degenerate_empty;
        }
        else {
            CHECK(r.tuples.size() == 25);
        }
    }
    CHECK(degenerate_full == 1);
    CHECK(degenerate_empty == 4);

    CHECK_THROWS_AS(builtin_structure("lin", {4}), std::invalid_argument);
    CHECK_THROWS_AS(builtin_structure("nonsense"), std::invalid_argument);
    CHECK_THROWS_AS(builtin_structure("k-coloring", {0}), std::invalid_argument);
}

TEST_CASE("built-in templates carry verified witnesses")
{
    for (const auto & spec : {"onein3-vs-nae", "coloring-vs-coloring:3:5", "nae-vs-nae:2:3"}) {
        auto v = builtin_from_spec(spec);
        const auto & t = std::get<PcspTemplate>(v);
        CHECK(similar(t.yes, t.no));
        CHECK(is_homomorphism(t.witness, t.yes, t.no));
        CHECK(find_homomorphism(t.yes, t.no).has_value());
    }
    CHECK_THROWS_AS(builtin_template("coloring-vs-coloring", {5, 3}), std::invalid_argument);
}

TEST_CASE("make_template rejects non-templates and verifies witnesses")
{
    const auto k2 = builtin_structure("k-coloring", {2});
    const auto k3 = builtin_structure("k-coloring", {3});
    CHECK_THROWS_AS(make_template(k3, k2), std::invalid_argument); // no homomorphism
    CHECK_THROWS_AS(make_template(k2, k3, HomMap{0, 0}), std::invalid_argument);
    auto t = make_template(k2, k3, HomMap{1, 2});
    CHECK(t.witness == HomMap{1, 2});
}

TEST_CASE("structure text format round-trips")
{
    for (const auto & s : {builtin_structure("k-coloring", {3}), builtin_structure("2sat"),
                           builtin_structure("onein3")}) {
        auto parsed = parse_structure(serialize_structure(s));
        CHECK(parsed == s);
    }

    const std::string text = "# comment\n"
                             "structure demo\n"
                             "domain 2\n"
                             "relation R 2   # inline comment\n"
                             "0 1\n"
                             "1 0\n"
                             "end\n";
    auto s = parse_structure(text);
    CHECK(s.name == "demo");
    CHECK(s.relations[0].tuples.size() == 2);

    CHECK_THROWS_AS(parse_structure("structure x\ndomain 2\nrelation R 2\n0\nend\n"), ParseError);
    CHECK_THROWS_AS(parse_structure("structure x\ndomain 2\nrelation R 1\n7\nend\n"), ParseError);
    CHECK_THROWS_AS(parse_structure("structure x\ndomain 2\n"), ParseError);
}

TEST_CASE("template files parse as yes/no blocks")
{
    const auto t = builtin_template("onein3-vs-nae");
    auto parsed = parse_template(serialize_template(t));
    CHECK(parsed.yes == t.yes);
    CHECK(parsed.no == t.no);
    CHECK(is_homomorphism(parsed.witness, parsed.yes, parsed.no));
}

TEST_CASE("relation tuples are stored as sorted sets")
{
    auto r = make_relation("R", 2, {{1, 0}, {0, 1}, {1, 0}});
    CHECK(r.tuples == std::vector<std::vector<int>>{{0, 1}, {1, 0}});
}
