#include "pcsp/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "pcsp/condition.hpp"
#include "pcsp/instance.hpp"
#include "pcsp/linear.hpp"
#include "pcsp/oracles.hpp"
#include "pcsp/polymorphism.hpp"
#include "pcsp/reduction.hpp"
#include "pcsp/solvers.hpp"
#include "pcsp/structure.hpp"

namespace pcsp {

namespace {

    // splitmix64: tiny, deterministic across platforms, good enough for test
    // data generation.
    class Rng {
    public:
        explicit Rng(std::uint64_t seed) : state_(seed) {}

        std::uint64_t next()
        {
            std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
            return z ^ (z >> 31);
        }

        /// Uniform-ish integer in [lo, hi].
        int uniform(int lo, int hi)
        {
            return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
        }

    private:
        std::uint64_t state_;
    };

    // ---- shared corpora -------------------------------------------------

    // All instances over a single ternary relation symbol with at most
    // max_vars variables and at most max_conjuncts conjuncts, using every
    // declared variable, deduplicated up to variable renaming.
    std::vector<PPInstance> ternary_instance_corpus(const std::string & symbol, int max_vars,
                                                    int max_conjuncts)
    {
        std::vector<PPInstance> corpus;
        std::set<std::vector<std::vector<int>>> seen;

        for (int v = 1; v <= max_vars; ++v) {
            std::vector<std::vector<int>> triples;
            for (int a = 0; a < v; ++a)
                for (int b = 0; b < v; ++b)
                    for (int c = 0; c < v; ++c)
                        triples.push_back({a, b, c});

            std::vector<int> perm_base(v);
            std::iota(perm_base.begin(), perm_base.end(), 0);

            // Non-decreasing index sequences = multisets of conjuncts.
            std::vector<int> pick;
            auto emit = [&]() {
                std::vector<std::vector<int>> conjuncts;
                std::vector<bool> used(v, false);
                for (int idx : pick) {
                    conjuncts.push_back(triples[idx]);
                    for (int e : triples[idx])
                        used[e] = true;
                }
                if (std::find(used.begin(), used.end(), false) != used.end())
                    return; // smaller-variable instance, generated elsewhere

                // Canonical form: minimum over variable permutations of the
                // sorted conjunct list.
                std::vector<std::vector<int>> canonical;
                std::vector<int> perm = perm_base;
                do {
                    std::vector<std::vector<int>> renamed = conjuncts;
                    for (auto & t : renamed)
                        for (auto & e : t)
                            e = perm[e];
                    std::sort(renamed.begin(), renamed.end());
                    if (canonical.empty() || renamed < canonical)
                        canonical = std::move(renamed);
                } while (std::next_permutation(perm.begin(), perm.end()));
                if (! seen.insert(canonical).second)
                    return;

                PPInstance inst;
                for (int i = 0; i < v; ++i)
                    inst.variables.push_back("a" + std::to_string(i));
                for (const auto & t : canonical)
                    inst.conjuncts.push_back({symbol, t});
                corpus.push_back(std::move(inst));
            };

            auto recurse = [&](auto && self, int first) -> void {
                if (! pick.empty())
                    emit();
                if (static_cast<int>(pick.size()) == max_conjuncts)
                    return;
                for (int idx = first; idx < static_cast<int>(triples.size()); ++idx) {
                    pick.push_back(idx);
                    self(self, idx);
                    pick.pop_back();
                }
            };
            recurse(recurse, 0);
        }
        return corpus;
    }

    // All minor conditions with the given symbol lists, equations
    // deduplicated up to variable renaming, conditions of one or two
    // equations.
    std::vector<MinorCondition> minor_condition_corpus()
    {
        std::vector<std::vector<SymbolDecl>> symbol_sets = {
            {{"f", 1}},
            {{"f", 2}},
            {{"f", 1}, {"g", 1}},
            {{"f", 1}, {"g", 2}},
            {{"f", 2}, {"g", 2}},
        };

        std::vector<MinorCondition> corpus;
        for (const auto & symbols : symbol_sets) {
            // Every equation shape between an (unordered) pair of symbols,
            // with variables canonicalized by first occurrence.
            std::vector<MinorEquation> equations;
            std::set<std::vector<int>> eq_seen;
            for (std::size_t i = 0; i < symbols.size(); ++i) {
                for (std::size_t j = i; j < symbols.size(); ++j) {
                    const int total = symbols[i].arity + symbols[j].arity;
                    std::vector<int> pattern(total, 0);
                    while (true) {
                        // Canonicalize: rename values by first occurrence.
                        std::vector<int> canon(total);
                        std::map<int, int> rename;
                        for (int p = 0; p < total; ++p) {
                            auto it = rename.find(pattern[p]);
                            if (it == rename.end())
                                it = rename.emplace(pattern[p], static_cast<int>(rename.size())).first;
                            canon[p] = it->second;
                        }
                        std::vector<int> key = canon;
                        key.push_back(static_cast<int>(i));
                        key.push_back(static_cast<int>(j));
                        if (canon == pattern && eq_seen.insert(key).second) {
                            auto var = [](int v) { return std::string(1, static_cast<char>('x' + v % 3)) +
                                                          (v >= 3 ? std::to_string(v) : ""); };
                            MinorEquation eq;
                            eq.lhs.symbol = symbols[i].name;
                            eq.rhs.symbol = symbols[j].name;
                            for (int p = 0; p < symbols[i].arity; ++p)
                                eq.lhs.vars.push_back(var(canon[p]));
                            for (int p = 0; p < symbols[j].arity; ++p)
                                eq.rhs.vars.push_back(var(canon[symbols[i].arity + p]));
                            equations.push_back(std::move(eq));
                        }
                        int p = total - 1;
                        while (p >= 0 && pattern[p] == total - 1)
                            pattern[p--] = 0;
                        if (p < 0)
                            break;
                        ++pattern[p];
                    }
                }
            }

            for (std::size_t i = 0; i < equations.size(); ++i) {
                MinorCondition single;
                single.symbols = symbols;
                single.equations = {equations[i]};
                corpus.push_back(single);
                for (std::size_t j = i + 1; j < equations.size(); ++j) {
                    MinorCondition pair;
                    pair.symbols = symbols;
                    pair.equations = {equations[i], equations[j]};
                    corpus.push_back(pair);
                }
            }
        }
        return corpus;
    }

    PPInstance planted_onein3_instance(Rng & rng, int max_vars, int max_edges)
    {
        const int n = rng.uniform(6, max_vars);
        const int edges = rng.uniform(1, max_edges);

        // A hidden one-in-three witness with at least one 1 and two 0s.
        std::vector<int> hidden(n);
        std::vector<int> ones, zeros;
        while (ones.empty() || zeros.size() < 2) {
            ones.clear();
            zeros.clear();
            for (int i = 0; i < n; ++i) {
                hidden[i] = rng.uniform(0, 3) == 0 ? 1 : 0; // sparse ones
                (hidden[i] ? ones : zeros).push_back(i);
            }
        }

        PPInstance inst;
        for (int i = 0; i < n; ++i)
            inst.variables.push_back("v" + std::to_string(i));
        for (int e = 0; e < edges; ++e) {
            int one = ones[rng.uniform(0, static_cast<int>(ones.size()) - 1)];
            int z1 = zeros[rng.uniform(0, static_cast<int>(zeros.size()) - 1)];
            int z2 = z1;
            while (z2 == z1)
                z2 = zeros[rng.uniform(0, static_cast<int>(zeros.size()) - 1)];
            std::vector<int> args = {one, z1, z2};
            // Random position for the 1-vertex.
            std::swap(args[0], args[rng.uniform(0, 2)]);
            inst.conjuncts.push_back({"R", args});
        }
        return inst;
    }

    std::string plural(std::size_t n, const char * word)
    {
        return std::to_string(n) + " " + word + (n == 1 ? "" : "s");
    }

    // ---- criteria --------------------------------------------------------

    CriterionResult criterion_forward_reduction(std::uint64_t)
    {
        CriterionResult r{1, "forward-reduction-exhaustive", false, "", 0};
        const PcspTemplate t = builtin_template("onein3-vs-nae");
        auto corpus = ternary_instance_corpus("R", 4, 3);

        std::size_t yes_count = 0, decoded = 0, failures = 0;
        for (const auto & inst : corpus) {
            auto art = instance_to_condition(inst, t);
            const bool true_in_a = brute_force_decide(inst, t.yes).has_value();
            const auto witness = is_trivial(art.condition);
            if (true_in_a) {
                ++yes_count;
                if (! witness) {
                    ++failures;
                    continue;
                }
            }
            auto interp = find_satisfying_interpretation(art.condition, t, 3);
            if (true_in_a && ! interp) {
                ++failures; // trivial conditions are satisfied by projections
                continue;
            }
            if (interp) {
                try {
                    auto assignment = certificate_to_assignment(*interp, art, inst, t);
                    if (! satisfies_instance(inst, t.no, assignment)) {
                        ++failures;
                        continue;
                    }
                    ++decoded;
                }
                catch (const CertificateError &) {
                    ++failures;
                }
            }
        }
        r.pass = failures == 0 && corpus.size() >= 500;
        std::ostringstream detail;
        detail << corpus.size() << " instances (" << yes_count << " true in the yes-structure, "
               << decoded << " decoded), " << failures << " counterexamples";
        r.detail = detail.str();
        return r;
    }

    CriterionResult criterion_reverse_reduction(std::uint64_t)
    {
        CriterionResult r{2, "reverse-reduction-oracle-equivalence", false, "", 0};
        auto corpus = minor_condition_corpus();
        std::vector<RelationalStructure> structures = {
            builtin_structure("k-coloring", {2}),
            builtin_structure("k-coloring", {3}),
            builtin_structure("2sat"),
        };

        std::size_t cases = 0, disagreements = 0;
        for (const auto & s : structures) {
            const PcspTemplate t = make_csp_template(s);
            // The exhaustive oracle scans each full table space once per
            // arity; memoized here so the product enumeration dominates.
            std::map<int, std::vector<FunctionTable>> pol_by_arity;
            auto filtered = [&](int arity) -> const std::vector<FunctionTable> & {
                auto it = pol_by_arity.find(arity);
                if (it == pol_by_arity.end())
                    it = pol_by_arity.emplace(arity, polymorphisms_by_filter(t, arity)).first;
                return it->second;
            };

            for (const auto & c : corpus) {
                ++cases;
                PPInstance inst = condition_to_instance(c, s);
                const bool by_instance = brute_force_decide(inst, s).has_value();

                bool by_tables = true;
                std::vector<const std::vector<FunctionTable> *> candidates;
                for (const auto & sym : c.symbols) {
                    candidates.push_back(&filtered(sym.arity));
                    if (candidates.back()->empty())
                        by_tables = false;
                }
                if (by_tables) {
                    by_tables = false;
                    std::vector<std::size_t> pick(c.symbols.size(), 0);
                    while (true) {
                        Interpretation interp;
                        interp.in_domain = s.domain_size;
                        interp.out_domain = s.domain_size;
                        for (std::size_t i = 0; i < c.symbols.size(); ++i)
                            interp.tables.emplace(c.symbols[i].name, (*candidates[i])[pick[i]]);
                        if (satisfies(c, interp)) {
                            by_tables = true;
                            break;
                        }
                        std::int64_t i = static_cast<std::int64_t>(pick.size()) - 1;
                        while (i >= 0 && pick[i] + 1 == candidates[i]->size())
                            pick[i--] = 0;
                        if (i < 0)
                            break;
                        ++pick[i];
                    }
                }
                if (by_instance != by_tables)
                    ++disagreements;
            }
        }
        r.pass = disagreements == 0;
        r.detail = std::to_string(cases) + " condition/structure cases, " +
                   std::to_string(disagreements) + " disagreements";
        return r;
    }

    CriterionResult criterion_display_reproduction(std::uint64_t)
    {
        CriterionResult r{3, "reduce-canonical-output", false, "", 0};
        const PcspTemplate t = builtin_template("onein3-vs-nae");
        const PPInstance inst = parse_instance("instance\n"
                                               "vars a b c d\n"
                                               "R(c,a,b)\n"
                                               "R(a,d,c)\n"
                                               "end\n",
                                               nullptr);
        auto art = instance_to_condition(inst, t);
        const std::string expected = "condition\n"
                                     "sym g_a 2\n"
                                     "sym g_b 2\n"
                                     "sym g_c 2\n"
                                     "sym g_d 2\n"
                                     "sym f_1 3\n"
                                     "sym f_2 3\n"
                                     "eq f_1(x1,x0,x0) = g_c(x0,x1)\n"
                                     "eq f_1(x0,x1,x0) = g_a(x0,x1)\n"
                                     "eq f_1(x0,x0,x1) = g_b(x0,x1)\n"
                                     "eq f_2(x1,x0,x0) = g_a(x0,x1)\n"
                                     "eq f_2(x0,x1,x0) = g_d(x0,x1)\n"
                                     "eq f_2(x0,x0,x1) = g_c(x0,x1)\n"
                                     "end\n";
        const std::string actual = serialize_condition(art.condition);
        const auto & order = art.tuple_order.at("R");
        const std::vector<std::vector<int>> pinned = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
        r.pass = actual == expected && order == pinned;
        r.detail = r.pass ? "byte-identical condition, tuple order (1,0,0),(0,1,0),(0,0,1)"
                          : "serialized condition differs from the pinned form";
        return r;
    }

    CriterionResult criterion_rational_solver(std::uint64_t seed)
    {
        CriterionResult r{4, "rational-solver-planted", false, "", 0};
        Rng rng(seed);
        const PcspTemplate t = builtin_template("onein3-vs-nae");
        const Rational third = one_third();

        std::size_t failures = 0;
        double worst = 0;
        for (int trial = 0; trial < 200; ++trial) {
            PPInstance inst = planted_onein3_instance(rng, 30, 60);
            auto start = std::chrono::steady_clock::now();

            auto point = solve_1in3_rational_point(inst);
            bool ok = true;
            for (const auto & x : point)
                if (x == third)
                    ok = false;
            auto system = build_1in3_system(inst);
            for (const auto & [coeffs, rhs] : system.rows) {
                Rational lhs(0);
                for (int i = 0; i < system.num_vars; ++i)
                    if (! coeffs[i].is_zero())
                        lhs += coeffs[i] * point[i];
                if (lhs != rhs)
                    ok = false;
            }
            Assignment assignment = solve_1in3_nae(inst);
            if (! satisfies_instance(inst, t.no, assignment))
                ok = false;

            double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                                 .count();
            worst = std::max(worst, seconds);
            if (seconds >= 1.0)
                ok = false;
            if (! ok)
                ++failures;
        }
        r.pass = failures == 0;
        std::ostringstream detail;
        detail << "200 planted instances, " << failures << " failures, worst case "
               << static_cast<int>(worst * 1000) << " ms";
        r.detail = detail.str();
        return r;
    }

    CriterionResult criterion_named_certificates(std::uint64_t)
    {
        CriterionResult r{5, "named-polymorphism-certificates", false, "", 0};
        std::vector<std::string> failed;

        if (! is_polymorphism(majority2(), builtin_structure("2sat")))
            failed.push_back("majority on 2sat");

        const RelationalStructure lin5 = builtin_structure("lin", {5});
        const FunctionTable affine141 = affine_mod(5, {1, 4, 1});
        if (! is_polymorphism(affine141, lin5))
            failed.push_back("x+4y+z on lin:5");

        MinorCondition maltsev_minor;
        maltsev_minor.symbols = {{"p", 3}};
        maltsev_minor.equations = {
            {{"p", {"x", "x", "y"}}, {"p", {"y", "y", "y"}}},
            {{"p", {"y", "x", "x"}}, {"p", {"y", "y", "y"}}},
        };
        Interpretation affine_interp;
        affine_interp.in_domain = 5;
        affine_interp.out_domain = 5;
        affine_interp.tables.emplace("p", affine141);
        if (! satisfies(maltsev_minor, affine_interp))
            failed.push_back("x+4y+z against the Maltsev-style minor condition");

        const PcspTemplate onein3_nae = builtin_template("onein3-vs-nae");
        for (int k : {1, 2, 4, 5, 7})
            if (! is_polymorphism(threshold13(k), onein3_nae))
                failed.push_back("threshold13(" + std::to_string(k) + ")");

        if (! is_polymorphism(FunctionTable(2, 2, 1, {1, 0}), builtin_structure("nae", {2})))
            failed.push_back("x -> 1-x on nae:2");

        r.pass = failed.empty();
        r.detail = failed.empty() ? "majority/affine/threshold/negation certificates all verified"
                                  : "failed: " + failed.front();
        return r;
    }

    CriterionResult criterion_triviality(std::uint64_t)
    {
        CriterionResult r{6, "triviality-verdicts", false, "", 0};
        std::vector<std::string> failed;

        MinorCondition maltsev_minor;
        maltsev_minor.symbols = {{"p", 3}};
        maltsev_minor.equations = {
            {{"p", {"x", "x", "y"}}, {"p", {"y", "y", "y"}}},
            {{"p", {"y", "x", "x"}}, {"p", {"y", "y", "y"}}},
        };
        if (is_trivial(maltsev_minor))
            failed.push_back("Maltsev-style condition misjudged trivial");

        MinorCondition majority_minor;
        majority_minor.symbols = {{"m", 3}};
        majority_minor.equations = {
            {{"m", {"x", "x", "y"}}, {"m", {"x", "x", "x"}}},
            {{"m", {"x", "y", "x"}}, {"m", {"x", "x", "x"}}},
            {{"m", {"y", "x", "x"}}, {"m", {"x", "x", "x"}}},
        };
        if (is_trivial(majority_minor))
            failed.push_back("majority-style condition misjudged trivial");

        MinorCondition swap_condition;
        swap_condition.symbols = {{"f", 2}, {"g", 2}};
        swap_condition.equations = {{{"f", {"x", "y"}}, {"g", {"y", "x"}}}};
        auto witness = is_trivial(swap_condition);
        if (! witness)
            failed.push_back("swap condition misjudged nontrivial");
        else if (! satisfies(swap_condition,
                             witness_interpretation(*witness, swap_condition.symbols, 2)))
            failed.push_back("swap condition witness does not satisfy the condition");

        auto corpus = minor_condition_corpus();
        std::size_t checked = 0, mismatches = 0;
        for (const auto & c : corpus) {
            ++checked;
            const bool fast = is_trivial(c).has_value();
            const bool slow = is_trivial_by_projections(to_strong(c)).has_value();
            if (fast != slow)
                ++mismatches;
        }
        if (mismatches > 0)
            failed.push_back(std::to_string(mismatches) + " cross-check mismatches");
        if (checked < 50)
            failed.push_back("corpus smaller than 50 conditions");

        r.pass = failed.empty();
        r.detail = failed.empty() ? "pinned verdicts ok; two code paths agree on " +
                                        plural(checked, "condition")
                                  : "failed: " + failed.front();
        return r;
    }

    CriterionResult criterion_enumeration_counts(std::uint64_t)
    {
        CriterionResult r{7, "enumeration-counts", false, "", 0};
        std::vector<std::string> failed;

        auto check = [&](const PcspTemplate & t, int arity, const std::string & label,
                         std::size_t expected_count) {
            auto enumerated = all_polymorphisms(t, arity);
            auto filtered = polymorphisms_by_filter(t, arity);
            if (enumerated.size() != expected_count)
                failed.push_back(label + ": expected " + std::to_string(expected_count) + ", got " +
                                 std::to_string(enumerated.size()));
            if (enumerated != filtered) // both are in lexicographic table order
                failed.push_back(label + ": backtracking and raw-filter outputs differ");
            return enumerated.size();
        };

        const PcspTemplate k3 = builtin_template("k-coloring", {3});
        check(k3, 1, "unary on k-coloring:3", 6);
        check(k3, 2, "binary on k-coloring:3", 12);
        check(builtin_template("onein3-vs-nae"), 1, "unary on onein3-vs-nae", 2);

        r.pass = failed.empty();
        r.detail = failed.empty()
                       ? "unary(K3)=6, binary(K3)=12, unary(onein3-vs-nae)=2; outputs set-equal"
                       : failed.front();
        return r;
    }

    CriterionResult criterion_solver_equivalence(std::uint64_t seed)
    {
        CriterionResult r{8, "solver-oracle-equivalence", false, "", 0};
        Rng rng(seed ^ 0x5eedu);

        const RelationalStructure twosat = builtin_structure("2sat");
        const char * symbols[] = {"R_00", "R_01", "R_10", "R_11"};
        std::size_t sat_disagreements = 0;
        for (int trial = 0; trial < 1000; ++trial) {
            const int n = rng.uniform(1, 10);
            const int clauses = rng.uniform(0, 15);
            PPInstance inst;
            for (int i = 0; i < n; ++i)
                inst.variables.push_back("x" + std::to_string(i));
            for (int cidx = 0; cidx < clauses; ++cidx)
                inst.conjuncts.push_back(
                    {symbols[rng.uniform(0, 3)], {rng.uniform(0, n - 1), rng.uniform(0, n - 1)}});

            auto fast = solve_2sat(inst);
            auto slow = brute_force_decide(inst, twosat);
            if (fast.has_value() != slow.has_value() ||
                (fast && ! satisfies_instance(inst, twosat, *fast)))
                ++sat_disagreements;
        }

        std::size_t modp_cases = 0, modp_disagreements = 0;
        for (int p : {2, 3, 5}) {
            for (int trial = 0; trial < 120; ++trial) {
                ModPSystem sys;
                sys.p = p;
                sys.num_vars = rng.uniform(1, 3);
                const int rows = rng.uniform(0, 3);
                for (int row = 0; row < rows; ++row) {
                    std::vector<int> coeffs(sys.num_vars);
                    for (auto & c : coeffs)
                        c = rng.uniform(0, p - 1);
                    sys.rows.emplace_back(std::move(coeffs), rng.uniform(0, p - 1));
                }
                ++modp_cases;

                auto fast = solve_mod_p(sys);
                // Exhaustive scan of all p^n assignments.
                bool any = false;
                std::vector<int> assignment(sys.num_vars, 0);
                while (! any) {
                    bool all_rows = true;
                    for (const auto & [coeffs, rhs] : sys.rows) {
                        long long lhs = 0;
                        for (int i = 0; i < sys.num_vars; ++i)
                            lhs += static_cast<long long>(coeffs[i]) * assignment[i];
                        if (lhs % p != rhs) {
                            all_rows = false;
                            break;
                        }
                    }
                    if (all_rows) {
                        any = true;
                        break;
                    }
                    int i = sys.num_vars - 1;
                    while (i >= 0 && assignment[i] == p - 1)
                        assignment[i--] = 0;
                    if (i < 0)
                        break;
                    ++assignment[i];
                }

                bool fast_ok = fast.has_value();
                if (fast_ok) {
                    for (const auto & [coeffs, rhs] : sys.rows) {
                        long long lhs = 0;
                        for (int i = 0; i < sys.num_vars; ++i)
                            lhs += static_cast<long long>(coeffs[i]) * (*fast)[i];
                        if (lhs % p != rhs)
                            fast_ok = false;
                    }
                }
                if (fast.has_value() != any || (fast.has_value() && ! fast_ok))
                    ++modp_disagreements;
            }
        }

        r.pass = sat_disagreements == 0 && modp_disagreements == 0;
        std::ostringstream detail;
        detail << "1000 2-SAT instances (" << sat_disagreements << " disagreements), " << modp_cases
               << " mod-p systems (" << modp_disagreements << " disagreements)";
        r.detail = detail.str();
        return r;
    }

} // namespace

CriterionResult run_criterion(int index, std::uint64_t seed)
{
    using Runner = CriterionResult (*)(std::uint64_t);
    static constexpr Runner runners[] = {
        criterion_forward_reduction, criterion_reverse_reduction, criterion_display_reproduction,
        criterion_rational_solver,   criterion_named_certificates, criterion_triviality,
        criterion_enumeration_counts, criterion_solver_equivalence,
    };
    if (index < 1 || index > 8)
        throw std::invalid_argument("criterion index must be in 1..8");

    auto start = std::chrono::steady_clock::now();
    CriterionResult r = runners[index - 1](seed);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::vector<CriterionResult> run_acceptance(const std::vector<int> & which, std::uint64_t seed,
                                            std::ostream * log)
{
    std::vector<int> selected = which;
    if (selected.empty())
        selected = {1, 2, 3, 4, 5, 6, 7, 8};

    std::vector<CriterionResult> results;
    for (int index : selected) {
        results.push_back(run_criterion(index, seed));
        const auto & r = results.back();
        if (log) {
            std::ostringstream line;
            line << "[" << r.index << "/8] " << r.name << " ... "
                 << (r.pass ? "PASS" : "FAIL") << " (" << r.detail << "; "
                 << static_cast<int>(r.seconds * 1000) << " ms)";
            (*log) << line.str() << '\n';
        }
    }
    return results;
}

} // namespace pcsp
