#include "pcsp/reduction.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "line_reader.hpp"
#include "union_find.hpp"

namespace pcsp {

ReductionArtifacts instance_to_condition(const PPInstance & inst, const PcspTemplate & t)
{
    if (! inst.equalities.empty())
        throw std::invalid_argument("instance_to_condition expects a normalized instance "
                                    "(no equalities)");
    const int domain = t.yes.domain_size;

    ReductionArtifacts art;
    // Condition variables x_e, one per domain element in canonical order.
    std::vector<std::string> domain_vars;
    for (int e = 0; e < domain; ++e)
        domain_vars.push_back("x" + std::to_string(e));

    for (const auto & v : inst.variables) {
        std::string symbol = "g_" + v;
        art.variable_symbols.emplace_back(v, symbol);
        art.condition.symbols.push_back({symbol, domain});
    }

    for (std::size_t j = 0; j < inst.conjuncts.size(); ++j) {
        const Conjunct & c = inst.conjuncts[j];
        const Relation * ra = t.yes.find_relation(c.symbol);
        if (ra == nullptr)
            throw std::invalid_argument("conjunct symbol '" + c.symbol +
                                        "' is not in the template signature");
        if (ra->arity != static_cast<int>(c.args.size()))
            throw std::invalid_argument("arity mismatch for conjunct '" + c.symbol + "'");
        if (ra->tuples.empty())
            throw std::invalid_argument("conjunct over the empty relation '" + c.symbol +
                                        "'; the instance is vacuously false in the yes-structure");

        if (! art.tuple_order.count(c.symbol)) {
            // Tuples indexed largest-first; this is the enumeration the
            // conjunct symbols' argument positions refer to.
            auto order = ra->tuples;
            std::sort(order.begin(), order.end(), std::greater<>());
            art.tuple_order.emplace(c.symbol, std::move(order));
        }
        const auto & order = art.tuple_order.at(c.symbol);

        std::string f_symbol = "f_" + std::to_string(j + 1);
        art.conjunct_symbols.push_back(f_symbol);
        art.condition.symbols.push_back({f_symbol, static_cast<int>(order.size())});

        for (int p = 0; p < ra->arity; ++p) {
            MinorEquation eq;
            eq.lhs.symbol = f_symbol;
            for (const auto & tuple : order)
                eq.lhs.vars.push_back(domain_vars[tuple[p]]);
            eq.rhs.symbol = art.variable_symbols[c.args[p]].second;
            eq.rhs.vars = domain_vars;
            art.condition.equations.push_back(std::move(eq));
        }
    }

    // Structural guarantee of the construction.
    for (const auto & [var, symbol] : art.variable_symbols)
        if (art.condition.arity_of(symbol) != domain)
            throw std::logic_error("variable symbol arity mismatch");
    for (std::size_t j = 0; j < art.conjunct_symbols.size(); ++j) {
        const Relation * ra = t.yes.find_relation(inst.conjuncts[j].symbol);
        if (art.condition.arity_of(art.conjunct_symbols[j]) !=
            static_cast<int>(ra->tuples.size()))
            throw std::logic_error("conjunct symbol arity mismatch");
    }
    return art;
}

Assignment certificate_to_assignment(const Interpretation & interp,
                                     const ReductionArtifacts & artifacts,
                                     const PPInstance & inst, const PcspTemplate & t)
{
    const int domain = t.yes.domain_size;
    std::vector<int> canonical(domain);
    for (int e = 0; e < domain; ++e)
        canonical[e] = e;

    Assignment assignment(inst.variables.size(), -1);
    for (std::size_t i = 0; i < inst.variables.size(); ++i) {
        auto mapping = std::find_if(artifacts.variable_symbols.begin(),
                                    artifacts.variable_symbols.end(), [&](const auto & pair) {
                                        return pair.first == inst.variables[i];
                                    });
        if (mapping == artifacts.variable_symbols.end())
            throw CertificateError("no symbol recorded for variable '" + inst.variables[i] + "'");
        auto table = interp.tables.find(mapping->second);
        if (table == interp.tables.end())
            throw CertificateError("interpretation lacks a table for '" + mapping->second + "'");
        if (table->second.arity() != domain || table->second.in_domain() != domain)
            throw CertificateError("table for '" + mapping->second +
                                   "' does not match the yes-structure domain");
        assignment[i] = table->second.apply(canonical);
    }

    if (! satisfies_instance(inst, t.no, assignment))
        throw CertificateError("decoded assignment does not satisfy the instance in the "
                               "no-structure; the interpretation was not drawn from the "
                               "template's polymorphisms");
    return assignment;
}

namespace {

    std::string cell_name(const std::string & symbol, const std::vector<int> & tuple, int domain)
    {
        std::string name = "v_" + symbol;
        if (tuple.empty())
            return name;
        name += "_";
        for (std::size_t i = 0; i < tuple.size(); ++i) {
            if (domain > 10 && i)
                name += "_";
            name += std::to_string(tuple[i]);
        }
        return name;
    }

} // namespace

PPInstance condition_to_instance(const MinorCondition & c, const RelationalStructure & s,
                                 SearchBudget * budget)
{
    SearchBudget local;
    SearchBudget & bu = budget ? *budget : local;
    const int domain = s.domain_size;
    const int n = static_cast<int>(c.symbols.size());

    std::map<std::string, int> symbol_index;
    std::vector<std::uint64_t> offset(n + 1, 0);
    std::vector<std::vector<std::vector<int>>> cell_tuples(n);
    for (int i = 0; i < n; ++i) {
        symbol_index[c.symbols[i].name] = i;
        const int k = c.symbols[i].arity;
        std::vector<int> tuple(k, 0);
        while (true) {
            bu.charge();
            cell_tuples[i].push_back(tuple);
            int j = k - 1;
            while (j >= 0 && tuple[j] == domain - 1)
                tuple[j--] = 0;
            if (j < 0)
                break;
            ++tuple[j];
        }
        offset[i + 1] = offset[i] + cell_tuples[i].size();
    }
    const std::uint64_t total_cells = offset[n];

    // Merge cells along the minor equations.
    detail::UnionFind uf(total_cells);
    for (const auto & eq : c.equations) {
        for (const auto * side : {&eq.lhs, &eq.rhs}) {
            if (! symbol_index.count(side->symbol))
                throw std::invalid_argument("undeclared symbol '" + side->symbol + "'");
            if (c.arity_of(side->symbol) != static_cast<int>(side->vars.size()))
                throw std::invalid_argument("arity mismatch for symbol '" + side->symbol + "'");
        }
        std::vector<std::string> vars;
        for (const auto & v : eq.lhs.vars)
            if (std::find(vars.begin(), vars.end(), v) == vars.end())
                vars.push_back(v);
        for (const auto & v : eq.rhs.vars)
            if (std::find(vars.begin(), vars.end(), v) == vars.end())
                vars.push_back(v);
        std::vector<int> lhs_pos, rhs_pos;
        for (const auto & v : eq.lhs.vars)
            lhs_pos.push_back(static_cast<int>(std::find(vars.begin(), vars.end(), v) - vars.begin()));
        for (const auto & v : eq.rhs.vars)
            rhs_pos.push_back(static_cast<int>(std::find(vars.begin(), vars.end(), v) - vars.begin()));

        const std::uint64_t f_off = offset[symbol_index.at(eq.lhs.symbol)];
        const std::uint64_t g_off = offset[symbol_index.at(eq.rhs.symbol)];
        std::vector<int> h(vars.size(), 0);
        while (true) {
            bu.charge();
            std::uint64_t li = 0, ri = 0;
            for (int p : lhs_pos)
                li = li * domain + h[p];
            for (int p : rhs_pos)
                ri = ri * domain + h[p];
            uf.unite(static_cast<int>(f_off + li), static_cast<int>(g_off + ri));
            int i = static_cast<int>(vars.size()) - 1;
            while (i >= 0 && h[i] == domain - 1)
                h[i--] = 0;
            if (i < 0)
                break;
            ++h[i];
        }
    }

    // Variables: one per merge class, named after its representative cell
    // (the first cell in symbol-major order).
    PPInstance inst;
    std::vector<int> cell_var(total_cells, -1);
    std::vector<std::int64_t> var_of_root(total_cells, -1);
    for (int i = 0; i < n; ++i) {
        for (std::size_t cell = 0; cell < cell_tuples[i].size(); ++cell) {
            const std::uint64_t global = offset[i] + cell;
            int root = uf.find(static_cast<int>(global));
            if (var_of_root[root] < 0) {
                var_of_root[root] = static_cast<int>(inst.variables.size());
                inst.variables.push_back(
                    cell_name(c.symbols[i].name, cell_tuples[i][cell], domain));
            }
            cell_var[global] = static_cast<int>(var_of_root[root]);
        }
    }

    // Conjuncts: for every relation, every symbol and every tuple choice, the
    // row-wise image of the choice, deduplicated.
    std::set<std::pair<std::string, std::vector<int>>> seen;
    for (const auto & r : s.relations) {
        const int m = r.arity;
        const std::size_t q = r.tuples.size();
        for (int i = 0; i < n; ++i) {
            const int k = c.symbols[i].arity;
            if (k > 0 && q == 0)
                continue;
            std::vector<std::size_t> choice(k, 0);
            while (true) {
                bu.charge();
                Conjunct conjunct;
                conjunct.symbol = r.symbol;
                for (int p = 0; p < m; ++p) {
                    std::uint64_t cell = 0;
                    for (int j = 0; j < k; ++j)
                        cell = cell * domain + r.tuples[choice[j]][p];
                    conjunct.args.push_back(cell_var[offset[i] + cell]);
                }
                if (seen.emplace(conjunct.symbol, conjunct.args).second)
                    inst.conjuncts.push_back(std::move(conjunct));
                int j = k - 1;
                while (j >= 0 && choice[j] == q - 1)
                    choice[j--] = 0;
                if (j < 0)
                    break;
                ++choice[j];
            }
        }
    }
    return inst;
}

std::string serialize_sidecar(const ReductionArtifacts & artifacts)
{
    std::string out;
    for (const auto & [var, symbol] : artifacts.variable_symbols)
        out += "map " + var + " " + symbol + "\n";
    return out;
}

std::vector<std::pair<std::string, std::string>> parse_sidecar(const std::string & text)
{
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto & line : detail::tokenize(text)) {
        if (line.tokens[0].text != "map" || line.tokens.size() != 3)
            throw ParseError(line.line, line.tokens[0].column,
                             "expected 'map <instance-var> <symbol>'");
        out.emplace_back(line.tokens[1].text, line.tokens[2].text);
    }
    return out;
}

} // namespace pcsp
