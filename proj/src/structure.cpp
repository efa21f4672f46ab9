#include "pcsp/structure.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "line_reader.hpp"

namespace pcsp {

Relation make_relation(std::string symbol, int arity, std::vector<std::vector<int>> tuples)
{
    std::sort(tuples.begin(), tuples.end());
    tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
    return Relation{std::move(symbol), arity, std::move(tuples)};
}

Signature RelationalStructure::signature() const
{
    Signature sig;
    sig.reserve(relations.size());
    for (const auto & r : relations)
        sig.push_back({r.symbol, r.arity});
    return sig;
}

const Relation * RelationalStructure::find_relation(const std::string & symbol) const
{
    for (const auto & r : relations)
        if (r.symbol == symbol)
            return &r;
    return nullptr;
}

std::vector<std::string> validate_structure(const RelationalStructure & s)
{
    std::vector<std::string> report;
    if (s.domain_size <= 0)
        report.push_back("domain size must be positive, got " + std::to_string(s.domain_size));
    std::set<std::string> seen;
    for (const auto & r : s.relations) {
        if (! seen.insert(r.symbol).second)
            report.push_back("duplicate relation symbol '" + r.symbol + "'");
        if (r.arity <= 0)
            report.push_back("relation '" + r.symbol + "' has non-positive arity " +
                             std::to_string(r.arity));
        for (const auto & t : r.tuples) {
            if (static_cast<int>(t.size()) != r.arity) {
                report.push_back("relation '" + r.symbol + "' declared arity " +
                                 std::to_string(r.arity) + " contains a tuple of length " +
                                 std::to_string(t.size()));
                continue;
            }
            for (int e : t)
                if (e < 0 || e >= s.domain_size)
                    report.push_back("relation '" + r.symbol + "' contains out-of-range entry " +
                                     std::to_string(e));
        }
    }
    return report;
}

bool similar(const RelationalStructure & a, const RelationalStructure & b)
{
    auto sa = a.signature(), sb = b.signature();
    std::sort(sa.begin(), sa.end(), [](const auto & x, const auto & y) { return x.symbol < y.symbol; });
    std::sort(sb.begin(), sb.end(), [](const auto & x, const auto & y) { return x.symbol < y.symbol; });
    return sa == sb;
}

namespace {

    bool contains_tuple(const Relation & r, const std::vector<int> & t)
    {
        return std::binary_search(r.tuples.begin(), r.tuples.end(), t);
    }

} // namespace

bool is_homomorphism(const HomMap & h, const RelationalStructure & a,
                     const RelationalStructure & b)
{
    if (! similar(a, b))
        throw std::invalid_argument("is_homomorphism: structures are not similar");
    if (static_cast<int>(h.size()) != a.domain_size)
        throw std::invalid_argument("is_homomorphism: map is not total on the domain");
    for (int v : h)
        if (v < 0 || v >= b.domain_size)
            throw std::invalid_argument("is_homomorphism: map value out of range");

    std::vector<int> image;
    for (const auto & ra : a.relations) {
        const Relation * rb = b.find_relation(ra.symbol);
        for (const auto & t : ra.tuples) {
            image.clear();
            for (int e : t)
                image.push_back(h[e]);
            if (! contains_tuple(*rb, image))
                return false;
        }
    }
    return true;
}

namespace {

    // Tuples of a grouped by the highest domain element they mention, so the
    // backtracking search checks each tuple exactly when it becomes fully
    // mapped.
    struct HomSearch {
        const RelationalStructure & a;
        const RelationalStructure & b;
        SearchBudget & budget;
        std::vector<std::vector<std::pair<const Relation *, const std::vector<int> *>>> by_max;
        HomMap assignment;

        HomSearch(const RelationalStructure & a_, const RelationalStructure & b_, SearchBudget & bu)
            : a(a_), b(b_), budget(bu), by_max(a_.domain_size), assignment(a_.domain_size, -1)
        {
            for (const auto & ra : a.relations) {
                const Relation * rb = b.find_relation(ra.symbol);
                for (const auto & t : ra.tuples) {
                    int mx = 0;
                    for (int e : t)
                        mx = std::max(mx, e);
                    by_max[mx].push_back({rb, &t});
                }
            }
        }

        bool extend(int v)
        {
            if (v == a.domain_size)
                return true;
            std::vector<int> image;
            for (int value = 0; value < b.domain_size; ++value) {
                budget.charge();
                assignment[v] = value;
                bool ok = true;
                for (const auto & [rb, t] : by_max[v]) {
                    image.clear();
                    for (int e : *t)
                        image.push_back(assignment[e]);
                    if (! contains_tuple(*rb, image)) {
                        ok = false;
                        break;
                    }
                }
                if (ok && extend(v + 1))
                    return true;
            }
            assignment[v] = -1;
            return false;
        }
    };

} // namespace

std::optional<HomMap> find_homomorphism(const RelationalStructure & a,
                                        const RelationalStructure & b,
                                        SearchBudget * budget)
{
    if (! similar(a, b))
        throw std::invalid_argument("find_homomorphism: structures are not similar");
    if (a.domain_size > 0 && b.domain_size == 0)
        return std::nullopt;
    SearchBudget local;
    HomSearch search(a, b, budget ? *budget : local);
    if (search.extend(0))
        return search.assignment;
    return std::nullopt;
}

PcspTemplate make_template(RelationalStructure yes, RelationalStructure no,
                           std::optional<HomMap> witness, SearchBudget * budget)
{
    if (! similar(yes, no))
        throw std::invalid_argument("template structures are not similar");

    // Reorder (and keep) no's relations in yes's declaration order.
    std::vector<Relation> reordered;
    for (const auto & r : yes.relations)
        reordered.push_back(*no.find_relation(r.symbol));
    no.relations = std::move(reordered);

    HomMap h;
    if (witness) {
        if (! is_homomorphism(*witness, yes, no))
            throw std::invalid_argument("supplied template witness is not a homomorphism");
        h = std::move(*witness);
    }
    else {
        auto found = find_homomorphism(yes, no, budget);
        if (! found)
            throw std::invalid_argument("no homomorphism from the yes-structure to the "
                                        "no-structure; the pair is not a valid template");
        h = std::move(*found);
    }
    return PcspTemplate{std::move(yes), std::move(no), std::move(h)};
}

PcspTemplate make_csp_template(RelationalStructure a)
{
    HomMap identity(a.domain_size);
    for (int i = 0; i < a.domain_size; ++i)
        identity[i] = i;
    RelationalStructure copy = a;
    return PcspTemplate{std::move(a), std::move(copy), std::move(identity)};
}

bool is_prime(int p)
{
    if (p < 2)
        return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

namespace {

    std::vector<std::vector<int>> all_tuples(int domain, int arity)
    {
        std::vector<std::vector<int>> out;
        std::vector<int> t(arity, 0);
        while (true) {
            out.push_back(t);
            int i = arity - 1;
            while (i >= 0 && t[i] == domain - 1)
                t[i--] = 0;
            if (i < 0)
                break;
            ++t[i];
        }
        return out;
    }

    RelationalStructure make_sat(int clause_len)
    {
        RelationalStructure s;
        s.name = std::to_string(clause_len) + "SAT";
        s.domain_size = 2;
        for (const auto & forbidden : all_tuples(2, clause_len)) {
            std::string sym = "R_";
            for (int e : forbidden)
                sym += static_cast<char>('0' + e);
            std::vector<std::vector<int>> tuples;
            for (const auto & t : all_tuples(2, clause_len))
                if (t != forbidden)
                    tuples.push_back(t);
            s.relations.push_back(make_relation(sym, clause_len, std::move(tuples)));
        }
        return s;
    }

    RelationalStructure make_coloring(int k)
    {
        if (k < 1)
            throw std::invalid_argument("k-coloring requires k >= 1");
        RelationalStructure s;
        s.name = "K_" + std::to_string(k);
        s.domain_size = k;
        std::vector<std::vector<int>> tuples;
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b)
                if (a != b)
                    tuples.push_back({a, b});
        s.relations.push_back(make_relation("N", 2, std::move(tuples)));
        return s;
    }

    RelationalStructure make_nae(int k)
    {
        if (k < 1)
            throw std::invalid_argument("nae requires k >= 1");
        RelationalStructure s;
        s.name = "3NAE_" + std::to_string(k);
        s.domain_size = k;
        std::vector<std::vector<int>> tuples;
        for (const auto & t : all_tuples(k, 3))
            if (! (t[0] == t[1] && t[1] == t[2]))
                tuples.push_back(t);
        s.relations.push_back(make_relation("NAE", 3, std::move(tuples)));
        return s;
    }

    RelationalStructure make_onein3()
    {
        RelationalStructure s;
        s.name = "1IN3";
        s.domain_size = 2;
        s.relations.push_back(make_relation("R", 3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
        return s;
    }

    RelationalStructure make_lin(int p)
    {
        if (! is_prime(p))
            throw std::invalid_argument("lin requires a prime modulus, got " + std::to_string(p));
        RelationalStructure s;
        s.name = "3LIN_" + std::to_string(p);
        s.domain_size = p;
        for (const auto & coeffs : all_tuples(p, 4)) {
            int a = coeffs[0], b = coeffs[1], c = coeffs[2], d = coeffs[3];
            std::string sym = "L_";
            for (std::size_t i = 0; i < coeffs.size(); ++i) {
                if (p <= 7)
                    sym += static_cast<char>('0' + coeffs[i]);
                else
                    sym += (i ? "_" : "") + std::to_string(coeffs[i]);
            }
            std::vector<std::vector<int>> tuples;
            for (const auto & t : all_tuples(p, 3))
                if ((a * t[0] + b * t[1] + c * t[2]) % p == d)
                    tuples.push_back(t);
            s.relations.push_back(make_relation(sym, 3, std::move(tuples)));
        }
        return s;
    }

    // Renames the single relation of b to match a's, so the pair is similar.
    PcspTemplate single_relation_template(RelationalStructure a, RelationalStructure b,
                                          HomMap witness)
    {
        b.relations[0].symbol = a.relations[0].symbol;
        return make_template(std::move(a), std::move(b), std::move(witness));
    }

    HomMap inclusion(int n)
    {
        HomMap h(n);
        for (int i = 0; i < n; ++i)
            h[i] = i;
        return h;
    }

} // namespace

std::variant<RelationalStructure, PcspTemplate> builtin(const std::string & name,
                                                        const std::vector<int> & params)
{
    auto need = [&](std::size_t n) {
        if (params.size() != n)
            throw std::invalid_argument("builtin '" + name + "' expects " + std::to_string(n) +
                                        " parameter(s), got " + std::to_string(params.size()));
    };
    if (name == "3sat") {
        need(0);
        return make_sat(3);
    }
    if (name == "2sat") {
        need(0);
        return make_sat(2);
    }
    if (name == "k-coloring") {
        need(1);
        return make_coloring(params[0]);
    }
    if (name == "nae") {
        need(1);
        return make_nae(params[0]);
    }
    if (name == "onein3") {
        need(0);
        return make_onein3();
    }
    if (name == "lin") {
        need(1);
        return make_lin(params[0]);
    }
    if (name == "onein3-vs-nae") {
        need(0);
        return single_relation_template(make_onein3(), make_nae(2), inclusion(2));
    }
    if (name == "coloring-vs-coloring") {
        need(2);
        if (params[0] > params[1])
            throw std::invalid_argument("coloring-vs-coloring requires k <= l");
        return single_relation_template(make_coloring(params[0]), make_coloring(params[1]),
                                        inclusion(params[0]));
    }
    if (name == "nae-vs-nae") {
        need(2);
        if (params[0] > params[1])
            throw std::invalid_argument("nae-vs-nae requires k <= l");
        return single_relation_template(make_nae(params[0]), make_nae(params[1]),
                                        inclusion(params[0]));
    }
    throw std::invalid_argument("unknown builtin '" + name + "'");
}

RelationalStructure builtin_structure(const std::string & name, const std::vector<int> & params)
{
    auto v = builtin(name, params);
    if (auto * s = std::get_if<RelationalStructure>(&v))
        return std::move(*s);
    throw std::invalid_argument("builtin '" + name + "' is a template, not a structure");
}

PcspTemplate builtin_template(const std::string & name, const std::vector<int> & params)
{
    auto v = builtin(name, params);
    if (auto * t = std::get_if<PcspTemplate>(&v))
        return std::move(*t);
    return make_csp_template(std::get<RelationalStructure>(std::move(v)));
}

std::variant<RelationalStructure, PcspTemplate> builtin_from_spec(const std::string & spec)
{
    std::string name = spec;
    std::vector<int> params;
    auto colon = spec.find(':');
    if (colon != std::string::npos) {
        name = spec.substr(0, colon);
        std::string rest = spec.substr(colon + 1);
        std::stringstream ss(rest);
        std::string piece;
        while (std::getline(ss, piece, ':')) {
            try {
                params.push_back(std::stoi(piece));
            }
            catch (const std::exception &) {
                throw std::invalid_argument("bad builtin parameter '" + piece + "' in '" + spec + "'");
            }
        }
    }
    return builtin(name, params);
}

namespace {

    // Parses one structure block starting at lines[pos]; advances pos past `end`.
    RelationalStructure parse_structure_block(const std::vector<detail::TokenLine> & lines,
                                              std::size_t & pos, const std::string & head_keyword)
    {
        using detail::TokenLine;
        auto fail = [](const TokenLine & l, int col, const std::string & msg) -> ParseError {
            return ParseError(l.line, col, msg);
        };

        if (pos >= lines.size())
            throw ParseError(1, 1, "expected '" + head_keyword + "' block");
        const TokenLine & head = lines[pos];
        if (head.tokens[0].text != head_keyword)
            throw fail(head, head.tokens[0].column,
                       "expected '" + head_keyword + "', got '" + head.tokens[0].text + "'");
        if (head.tokens.size() != 2)
            throw fail(head, head.tokens[0].column, "'" + head_keyword + "' expects exactly a name");
        RelationalStructure s;
        s.name = head.tokens[1].text;
        ++pos;

        bool have_domain = false;
        Relation * current = nullptr;
        std::vector<std::vector<std::vector<int>>> tuple_acc;
        for (; pos < lines.size(); ++pos) {
            const TokenLine & l = lines[pos];
            const std::string & kw = l.tokens[0].text;
            if (kw == "end") {
                ++pos;
                for (std::size_t i = 0; i < s.relations.size(); ++i)
                    s.relations[i] = make_relation(s.relations[i].symbol, s.relations[i].arity,
                                                   std::move(tuple_acc[i]));
                if (! have_domain)
                    throw fail(l, l.tokens[0].column, "structure has no 'domain' line");
                auto report = validate_structure(s);
                if (! report.empty())
                    throw fail(l, 1, "invalid structure: " + report.front());
                return s;
            }
            if (kw == "domain") {
                if (l.tokens.size() != 2)
                    throw fail(l, l.tokens[0].column, "'domain' expects exactly one integer");
                s.domain_size = detail::parse_int(l.tokens[1], l.line);
                have_domain = true;
                continue;
            }
            if (kw == "relation") {
                if (l.tokens.size() != 3)
                    throw fail(l, l.tokens[0].column, "'relation' expects a symbol and an arity");
                if (! detail::is_identifier(l.tokens[1].text))
                    throw fail(l, l.tokens[1].column,
                               "relation symbol must be an identifier, got '" + l.tokens[1].text + "'");
                s.relations.push_back(
                    Relation{l.tokens[1].text, detail::parse_int(l.tokens[2], l.line), {}});
                tuple_acc.emplace_back();
                current = &s.relations.back();
                continue;
            }
            // Otherwise the line is a tuple of integers for the current relation.
            if (current == nullptr)
                throw fail(l, l.tokens[0].column, "tuple line outside any 'relation' block");
            std::vector<int> t;
            for (const auto & tok : l.tokens)
                t.push_back(detail::parse_int(tok, l.line));
            if (static_cast<int>(t.size()) != current->arity)
                throw fail(l, l.tokens[0].column,
                           "tuple length " + std::to_string(t.size()) + " does not match arity " +
                               std::to_string(current->arity) + " of relation '" + current->symbol + "'");
            tuple_acc.back().push_back(std::move(t));
        }
        throw ParseError(lines.back().line, 1, "unterminated structure block (missing 'end')");
    }

} // namespace

RelationalStructure parse_structure(const std::string & text)
{
    auto lines = detail::tokenize(text);
    std::size_t pos = 0;
    auto s = parse_structure_block(lines, pos, "structure");
    if (pos != lines.size())
        throw ParseError(lines[pos].line, 1, "trailing content after structure block");
    return s;
}

namespace {

std::string serialize_structure_block(const RelationalStructure & s, const std::string & head)
{
    std::ostringstream out;
    out << head << ' ' << s.name << '\n';
    out << "domain " << s.domain_size << '\n';
    for (const auto & r : s.relations) {
        out << "relation " << r.symbol << ' ' << r.arity << '\n';
        for (const auto & t : r.tuples) {
            for (std::size_t i = 0; i < t.size(); ++i)
                out << (i ? " " : "") << t[i];
            out << '\n';
        }
    }
    out << "end\n";
    return out.str();
}

} // namespace

std::string serialize_structure(const RelationalStructure & s)
{
    return serialize_structure_block(s, "structure");
}

PcspTemplate parse_template(const std::string & text, SearchBudget * budget)
{
    auto lines = detail::tokenize(text);
    std::size_t pos = 0;
    auto yes = parse_structure_block(lines, pos, "yes-structure");
    auto no = parse_structure_block(lines, pos, "no-structure");
    if (pos != lines.size())
        throw ParseError(lines[pos].line, 1, "trailing content after template blocks");
    return make_template(std::move(yes), std::move(no), std::nullopt, budget);
}

std::string serialize_template(const PcspTemplate & t)
{
    return serialize_structure_block(t.yes, "yes-structure") +
           serialize_structure_block(t.no, "no-structure");
}

} // namespace pcsp
