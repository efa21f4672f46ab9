#include "pcsp/condition.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "pcsp/polymorphism.hpp"
#include "line_reader.hpp"
#include "union_find.hpp"

namespace pcsp {

namespace {

    int lookup_arity(const std::vector<SymbolDecl> & symbols, const std::string & name)
    {
        for (const auto & s : symbols)
            if (s.name == name)
                return s.arity;
        return -1;
    }

} // namespace

int StrongMaltsevCondition::arity_of(const std::string & symbol) const
{
    return lookup_arity(symbols, symbol);
}

int MinorCondition::arity_of(const std::string & symbol) const
{
    return lookup_arity(symbols, symbol);
}

std::optional<MinorCondition> as_minor(const StrongMaltsevCondition & c)
{
    auto side = [](const Term & t) -> std::optional<MinorSide> {
        if (t.is_variable)
            return std::nullopt;
        MinorSide s;
        s.symbol = t.head;
        for (const auto & child : t.children) {
            if (! child.is_variable)
                return std::nullopt;
            s.vars.push_back(child.head);
        }
        return s;
    };

    MinorCondition out;
    out.symbols = c.symbols;
    for (const auto & [lhs, rhs] : c.equations) {
        auto l = side(lhs), r = side(rhs);
        if (! l || ! r)
            return std::nullopt;
        out.equations.push_back({std::move(*l), std::move(*r)});
    }
    return out;
}

StrongMaltsevCondition to_strong(const MinorCondition & c)
{
    auto term = [](const MinorSide & s) {
        std::vector<Term> args;
        args.reserve(s.vars.size());
        for (const auto & v : s.vars)
            args.push_back(Term::variable(v));
        return Term::apply(s.symbol, std::move(args));
    };
    StrongMaltsevCondition out;
    out.symbols = c.symbols;
    for (const auto & eq : c.equations)
        out.equations.emplace_back(term(eq.lhs), term(eq.rhs));
    return out;
}

namespace {

    using detail::Token;
    using detail::TokenLine;

    // Recursive-descent term parser over one token line.
    struct TermParser {
        const TokenLine & line;
        const std::vector<SymbolDecl> & symbols;
        std::size_t pos;

        [[noreturn]] void fail(const std::string & msg, int column) const
        {
            throw ParseError(line.line, column, msg);
        }

        const Token & peek() const
        {
            if (pos >= line.tokens.size())
                fail("unexpected end of line in term",
                     line.tokens.back().column + static_cast<int>(line.tokens.back().text.size()));
            return line.tokens[pos];
        }

        bool at(const char * text) const
        {
            return pos < line.tokens.size() && line.tokens[pos].text == text;
        }

        Term parse_term()
        {
            const Token & head = peek();
            if (! detail::is_identifier(head.text))
                fail("expected a variable or symbol, got '" + head.text + "'", head.column);
            ++pos;
            int declared = lookup_arity(symbols, head.text);
            if (! at("(")) {
                if (declared >= 0) {
                    if (declared != 0)
                        fail("symbol '" + head.text + "' of arity " + std::to_string(declared) +
                                 " used without arguments",
                             head.column);
                    return Term::apply(head.text, {});
                }
                return Term::variable(head.text);
            }
            if (declared < 0)
                fail("undeclared symbol '" + head.text + "'", head.column);
            ++pos; // '('
            std::vector<Term> args;
            if (at(")")) {
                ++pos;
            }
            else {
                while (true) {
                    args.push_back(parse_term());
                    if (at(",")) {
                        ++pos;
                        continue;
                    }
                    if (at(")")) {
                        ++pos;
                        break;
                    }
                    fail("expected ',' or ')' in argument list", peek().column);
                }
            }
            if (static_cast<int>(args.size()) != declared)
                fail("symbol '" + head.text + "' declared with arity " + std::to_string(declared) +
                         " applied to " + std::to_string(args.size()) + " arguments",
                     head.column);
            return Term::apply(head.text, std::move(args));
        }
    };

} // namespace

StrongMaltsevCondition parse_condition(const std::string & text)
{
    auto lines = detail::tokenize(text);
    if (lines.empty() || lines[0].tokens[0].text != "condition")
        throw ParseError(lines.empty() ? 1 : lines[0].line, 1, "expected 'condition'");

    StrongMaltsevCondition c;
    bool terminated = false;
    std::size_t pos = 1;
    for (; pos < lines.size(); ++pos) {
        const auto & l = lines[pos];
        const auto & kw = l.tokens[0];
        if (kw.text == "end") {
            terminated = true;
            ++pos;
            break;
        }
        if (kw.text == "sym") {
            if (l.tokens.size() != 3)
                throw ParseError(l.line, kw.column, "'sym' expects a name and an arity");
            if (! detail::is_identifier(l.tokens[1].text))
                throw ParseError(l.line, l.tokens[1].column,
                                 "symbol name must be an identifier, got '" + l.tokens[1].text + "'");
            if (lookup_arity(c.symbols, l.tokens[1].text) >= 0)
                throw ParseError(l.line, l.tokens[1].column,
                                 "duplicate symbol '" + l.tokens[1].text + "'");
            int arity = detail::parse_int(l.tokens[2], l.line);
            if (arity < 0)
                throw ParseError(l.line, l.tokens[2].column, "symbol arity must be non-negative");
            c.symbols.push_back({l.tokens[1].text, arity});
            continue;
        }
        if (kw.text == "eq") {
            TermParser parser{l, c.symbols, 1};
            Term lhs = parser.parse_term();
            if (! parser.at("="))
                throw ParseError(l.line,
                                 parser.pos < l.tokens.size() ? l.tokens[parser.pos].column : 1,
                                 "expected '=' between equation sides");
            ++parser.pos;
            Term rhs = parser.parse_term();
            if (parser.pos != l.tokens.size())
                throw ParseError(l.line, l.tokens[parser.pos].column,
                                 "trailing tokens after equation");
            c.equations.emplace_back(std::move(lhs), std::move(rhs));
            continue;
        }
        throw ParseError(l.line, kw.column, "expected 'sym', 'eq' or 'end', got '" + kw.text + "'");
    }
    if (! terminated)
        throw ParseError(lines.back().line, 1, "unterminated condition (missing 'end')");
    if (pos != lines.size())
        throw ParseError(lines[pos].line, 1, "trailing content after 'end'");
    return c;
}

namespace {

    void render_term(const Term & t, std::ostream & out)
    {
        out << t.head;
        if (! t.is_variable) {
            out << '(';
            for (std::size_t i = 0; i < t.children.size(); ++i) {
                if (i)
                    out << ',';
                render_term(t.children[i], out);
            }
            out << ')';
        }
    }

} // namespace

std::string serialize_condition(const StrongMaltsevCondition & c)
{
    std::ostringstream out;
    out << "condition\n";
    for (const auto & s : c.symbols)
        out << "sym " << s.name << ' ' << s.arity << '\n';
    for (const auto & [lhs, rhs] : c.equations) {
        out << "eq ";
        render_term(lhs, out);
        out << " = ";
        render_term(rhs, out);
        out << '\n';
    }
    out << "end\n";
    return out.str();
}

std::string serialize_condition(const MinorCondition & c)
{
    return serialize_condition(to_strong(c));
}

std::vector<std::string> validate_interpretation(const Interpretation & i,
                                                 const std::vector<SymbolDecl> & symbols)
{
    std::vector<std::string> report;
    for (const auto & s : symbols) {
        auto it = i.tables.find(s.name);
        if (it == i.tables.end()) {
            report.push_back("symbol '" + s.name + "' is not interpreted");
            continue;
        }
        if (it->second.arity() != s.arity)
            report.push_back("symbol '" + s.name + "' has arity " + std::to_string(s.arity) +
                             " but its table has arity " + std::to_string(it->second.arity()));
        if (it->second.in_domain() != i.in_domain || it->second.out_domain() != i.out_domain)
            report.push_back("table for '" + s.name + "' does not share the common domains");
    }
    return report;
}

int evaluate_term(const Term & t, const Interpretation & interp,
                  const std::map<std::string, int> & assignment)
{
    if (t.is_variable) {
        auto it = assignment.find(t.head);
        if (it == assignment.end())
            throw std::invalid_argument("evaluate_term: unassigned variable '" + t.head + "'");
        return it->second;
    }
    auto table = interp.tables.find(t.head);
    if (table == interp.tables.end())
        throw std::invalid_argument("evaluate_term: uninterpreted symbol '" + t.head + "'");
    std::vector<int> args;
    args.reserve(t.children.size());
    for (const auto & child : t.children) {
        if (! child.is_variable && interp.in_domain != interp.out_domain)
            throw std::invalid_argument("evaluate_term: nested term over an interpretation with "
                                        "distinct input and output domains");
        args.push_back(evaluate_term(child, interp, assignment));
    }
    return table->second.apply(args);
}

namespace {

    void collect_variables(const Term & t, std::vector<std::string> & out)
    {
        if (t.is_variable) {
            if (std::find(out.begin(), out.end(), t.head) == out.end())
                out.push_back(t.head);
            return;
        }
        for (const auto & child : t.children)
            collect_variables(child, out);
    }

} // namespace

bool satisfies(const StrongMaltsevCondition & c, const Interpretation & interp)
{
    auto problems = validate_interpretation(interp, c.symbols);
    if (! problems.empty())
        throw std::invalid_argument("satisfies: " + problems.front());

    for (const auto & [lhs, rhs] : c.equations) {
        if (interp.in_domain != interp.out_domain && (lhs.is_variable || rhs.is_variable))
            throw std::invalid_argument("satisfies: a bare-variable equation side is meaningful "
                                        "only when input and output domains coincide");
        std::vector<std::string> vars;
        collect_variables(lhs, vars);
        collect_variables(rhs, vars);

        std::map<std::string, int> assignment;
        std::vector<int> h(vars.size(), 0);
        while (true) {
            for (std::size_t i = 0; i < vars.size(); ++i)
                assignment[vars[i]] = h[i];
            if (evaluate_term(lhs, interp, assignment) != evaluate_term(rhs, interp, assignment))
                return false;
            int i = static_cast<int>(vars.size()) - 1;
            while (i >= 0 && h[i] == interp.in_domain - 1)
                h[i--] = 0;
            if (i < 0)
                break;
            ++h[i];
        }
    }
    return true;
}

bool satisfies(const MinorCondition & c, const Interpretation & interp)
{
    return satisfies(to_strong(c), interp);
}

bool satisfies_minor_by_cells(const MinorCondition & c, const Interpretation & interp)
{
    auto problems = validate_interpretation(interp, c.symbols);
    if (! problems.empty())
        throw std::invalid_argument("satisfies_minor_by_cells: " + problems.front());

    for (const auto & eq : c.equations) {
        const FunctionTable & f = interp.tables.at(eq.lhs.symbol);
        const FunctionTable & g = interp.tables.at(eq.rhs.symbol);

        std::vector<std::string> vars;
        for (const auto & v : eq.lhs.vars)
            if (std::find(vars.begin(), vars.end(), v) == vars.end())
                vars.push_back(v);
        for (const auto & v : eq.rhs.vars)
            if (std::find(vars.begin(), vars.end(), v) == vars.end())
                vars.push_back(v);

        std::vector<int> lhs_pos, rhs_pos;
        for (const auto & v : eq.lhs.vars)
            lhs_pos.push_back(static_cast<int>(
                std::find(vars.begin(), vars.end(), v) - vars.begin()));
        for (const auto & v : eq.rhs.vars)
            rhs_pos.push_back(static_cast<int>(
                std::find(vars.begin(), vars.end(), v) - vars.begin()));

        std::vector<int> h(vars.size(), 0);
        while (true) {
            std::uint64_t li = 0, ri = 0;
            for (int p : lhs_pos)
                li = li * static_cast<std::uint64_t>(interp.in_domain) +
                     static_cast<std::uint64_t>(h[p]);
            for (int p : rhs_pos)
                ri = ri * static_cast<std::uint64_t>(interp.in_domain) +
                     static_cast<std::uint64_t>(h[p]);
            if (f.table()[li] != g.table()[ri])
                return false;
            int i = static_cast<int>(vars.size()) - 1;
            while (i >= 0 && h[i] == interp.in_domain - 1)
                h[i--] = 0;
            if (i < 0)
                break;
            ++h[i];
        }
    }
    return true;
}

std::optional<ProjectionWitness> is_trivial(const MinorCondition & c)
{
    // Projections exist only at positive arities.
    for (const auto & s : c.symbols)
        if (s.arity == 0)
            return std::nullopt;

    // Backtracking over coordinate choices, checking each equation as soon
    // as both of its symbols are decided.
    const int n = static_cast<int>(c.symbols.size());
    std::map<std::string, int> symbol_index;
    for (int i = 0; i < n; ++i)
        symbol_index[c.symbols[i].name] = i;

    std::vector<int> coordinate(n, 0); // 0 = undecided, else 1-based
    auto equation_ok = [&](const MinorEquation & eq) {
        int fi = symbol_index.at(eq.lhs.symbol);
        int gi = symbol_index.at(eq.rhs.symbol);
        if (coordinate[fi] == 0 || coordinate[gi] == 0)
            return true; // not yet determined
        return eq.lhs.vars[coordinate[fi] - 1] == eq.rhs.vars[coordinate[gi] - 1];
    };

    std::vector<std::vector<const MinorEquation *>> touching(n);
    for (const auto & eq : c.equations) {
        touching[symbol_index.at(eq.lhs.symbol)].push_back(&eq);
        if (eq.rhs.symbol != eq.lhs.symbol)
            touching[symbol_index.at(eq.rhs.symbol)].push_back(&eq);
    }

    auto search = [&](auto && self, int i) -> bool {
        if (i == n)
            return true;
        for (int coord = 1; coord <= c.symbols[i].arity; ++coord) {
            coordinate[i] = coord;
            bool ok = true;
            for (const MinorEquation * eq : touching[i])
                if (! equation_ok(*eq)) {
                    ok = false;
                    break;
                }
            if (ok && self(self, i + 1))
                return true;
        }
        coordinate[i] = 0;
        return false;
    };

    if (! search(search, 0))
        return std::nullopt;
    ProjectionWitness w;
    for (int i = 0; i < n; ++i)
        w[c.symbols[i].name] = coordinate[i];
    return w;
}

Interpretation witness_interpretation(const ProjectionWitness & w,
                                      const std::vector<SymbolDecl> & symbols, int domain)
{
    Interpretation interp;
    interp.in_domain = domain;
    interp.out_domain = domain;
    for (const auto & s : symbols)
        interp.tables.emplace(s.name, projection(s.arity, w.at(s.name), domain));
    return interp;
}

std::optional<ProjectionWitness> is_trivial_by_projections(const StrongMaltsevCondition & c)
{
    for (const auto & s : c.symbols)
        if (s.arity == 0)
            return std::nullopt;
    const int n = static_cast<int>(c.symbols.size());

    std::vector<int> coordinate(n, 1);
    while (true) {
        ProjectionWitness w;
        for (int i = 0; i < n; ++i)
            w[c.symbols[i].name] = coordinate[i];
        if (satisfies(c, witness_interpretation(w, c.symbols, 2)))
            return w;
        int i = n - 1;
        while (i >= 0 && coordinate[i] == c.symbols[i].arity)
            coordinate[i--] = 1;
        if (i < 0)
            break;
        ++coordinate[i];
    }
    return std::nullopt;
}

namespace {

    // Flattened column choices over cell classes, grouped by the class that
    // determines them last. Mirrors the layout used by the polymorphism
    // enumerator, with table cells replaced by their merge classes.
    struct ClassChoiceTable {
        std::vector<std::uint32_t> classes;
        std::vector<std::uint32_t> choice_off;
        std::vector<std::uint32_t> rel;
        std::vector<std::uint32_t> by_max_off;
        std::vector<std::uint32_t> by_max;
    };

} // namespace

std::optional<Interpretation> find_satisfying_interpretation(const MinorCondition & c,
                                                             const PcspTemplate & t,
                                                             int max_arity, SearchBudget * budget)
{
    for (const auto & s : c.symbols)
        if (s.arity > max_arity)
            throw std::invalid_argument("symbol '" + s.name + "' has arity " +
                                        std::to_string(s.arity) + " above the bound " +
                                        std::to_string(max_arity));
    for (const auto & eq : c.equations) {
        for (const auto * side : {&eq.lhs, &eq.rhs}) {
            int a = c.arity_of(side->symbol);
            if (a < 0)
                throw std::invalid_argument("undeclared symbol '" + side->symbol + "'");
            if (a != static_cast<int>(side->vars.size()))
                throw std::invalid_argument("arity mismatch for symbol '" + side->symbol + "'");
        }
    }

    SearchBudget local;
    SearchBudget & bu = budget ? *budget : local;
    const int in_domain = t.yes.domain_size;
    const int out_domain = t.no.domain_size;
    const int n = static_cast<int>(c.symbols.size());

    Interpretation result;
    result.in_domain = in_domain;
    result.out_domain = out_domain;
    if (n == 0)
        return result; // vacuous condition

    std::map<std::string, int> symbol_index;
    std::vector<std::uint64_t> offset(n + 1, 0);
    for (int i = 0; i < n; ++i) {
        symbol_index[c.symbols[i].name] = i;
        offset[i + 1] = offset[i] + table_size(in_domain, c.symbols[i].arity);
    }
    const std::uint64_t total_cells = offset[n];
    if (total_cells > (1u << 26))
        throw ResourceLimitError("joint table space of " + std::to_string(total_cells) +
                                 " cells is too large");

    // Merge cells linked by the minor equations.
    detail::UnionFind uf(total_cells);
    for (const auto & eq : c.equations) {
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
                li = li * in_domain + h[p];
            for (int p : rhs_pos)
                ri = ri * in_domain + h[p];
            uf.unite(static_cast<int>(f_off + li), static_cast<int>(g_off + ri));
            int i = static_cast<int>(vars.size()) - 1;
            while (i >= 0 && h[i] == in_domain - 1)
                h[i--] = 0;
            if (i < 0)
                break;
            ++h[i];
        }
    }

    // Number classes in order of their first cell; cells are later assigned
    // values in class order.
    std::vector<std::uint32_t> cell_class(total_cells);
    std::vector<std::int64_t> class_of_root(total_cells, -1);
    std::uint32_t num_classes = 0;
    for (std::uint64_t cell = 0; cell < total_cells; ++cell) {
        int root = uf.find(static_cast<int>(cell));
        if (class_of_root[root] < 0)
            class_of_root[root] = num_classes++;
        cell_class[cell] = static_cast<std::uint32_t>(class_of_root[root]);
    }

    // Column choices per symbol and relation pair, grouped by last class.
    ClassChoiceTable ct;
    std::vector<std::uint32_t> max_class_of;
    for (int si = 0; si < n; ++si) {
        const int k = c.symbols[si].arity;
        for (std::size_t ri = 0; ri < t.yes.relations.size(); ++ri) {
            const Relation & ra = t.yes.relations[ri];
            const int m = ra.arity;
            const std::size_t q = ra.tuples.size();
            if (k > 0 && q == 0)
                continue;
            std::vector<std::size_t> choice(k, 0);
            while (true) {
                bu.charge();
                ct.choice_off.push_back(static_cast<std::uint32_t>(ct.classes.size()));
                std::uint32_t mx = 0;
                for (int p = 0; p < m; ++p) {
                    std::uint64_t cell = 0;
                    for (int j = 0; j < k; ++j)
                        cell = cell * in_domain + ra.tuples[choice[j]][p];
                    std::uint32_t cls = cell_class[offset[si] + cell];
                    ct.classes.push_back(cls);
                    mx = std::max(mx, cls);
                }
                ct.rel.push_back(static_cast<std::uint32_t>(ri));
                max_class_of.push_back(mx);
                int j = k - 1;
                while (j >= 0 && choice[j] == q - 1)
                    choice[j--] = 0;
                if (j < 0)
                    break;
                ++choice[j];
            }
        }
    }
    ct.by_max_off.assign(num_classes + 1, 0);
    for (auto mx : max_class_of)
        ++ct.by_max_off[mx + 1];
    for (std::uint32_t q = 1; q <= num_classes; ++q)
        ct.by_max_off[q] += ct.by_max_off[q - 1];
    ct.by_max.resize(max_class_of.size());
    {
        std::vector<std::uint32_t> cursor(ct.by_max_off.begin(), ct.by_max_off.end() - 1);
        for (std::uint32_t id = 0; id < max_class_of.size(); ++id)
            ct.by_max[cursor[max_class_of[id]]++] = id;
    }

    std::vector<const Relation *> rb(t.no.relations.size());
    std::vector<std::vector<std::uint8_t>> rb_bitmap(t.no.relations.size());
    for (std::size_t ri = 0; ri < t.no.relations.size(); ++ri) {
        rb[ri] = &t.no.relations[ri];
        std::uint64_t space = 1;
        for (int i = 0; i < rb[ri]->arity; ++i)
            space *= static_cast<std::uint64_t>(out_domain);
        rb_bitmap[ri].assign(space, 0);
        for (const auto & tup : rb[ri]->tuples) {
            std::uint64_t idx = 0;
            for (int e : tup)
                idx = idx * out_domain + e;
            rb_bitmap[ri][idx] = 1;
        }
    }

    std::vector<int> value(num_classes, 0);
    auto consistent_at = [&](std::uint32_t q) {
        for (std::uint32_t gi = ct.by_max_off[q]; gi < ct.by_max_off[q + 1]; ++gi) {
            const std::uint32_t id = ct.by_max[gi];
            const std::uint32_t ri = ct.rel[id];
            const int m = rb[ri]->arity;
            const std::uint32_t * cls = ct.classes.data() + ct.choice_off[id];
            std::uint64_t idx = 0;
            for (int p = 0; p < m; ++p)
                idx = idx * out_domain + value[cls[p]];
            if (! rb_bitmap[ri][idx])
                return false;
        }
        return true;
    };

    std::uint32_t q = 0;
    bool found = false;
    while (true) {
        bu.charge();
        bool advance = true;
        if (consistent_at(q)) {
            if (q + 1 == num_classes) {
                found = true;
                break;
            }
            ++q;
            value[q] = 0;
            advance = false;
        }
        if (advance) {
            while (true) {
                if (value[q] + 1 < out_domain) {
                    ++value[q];
                    break;
                }
                if (q == 0)
                    return std::nullopt;
                --q;
            }
        }
    }
    if (! found)
        return std::nullopt;

    for (int si = 0; si < n; ++si) {
        std::uint64_t size = table_size(in_domain, c.symbols[si].arity);
        std::vector<int> table(size);
        for (std::uint64_t cell = 0; cell < size; ++cell)
            table[cell] = value[cell_class[offset[si] + cell]];
        result.tables.emplace(c.symbols[si].name,
                              FunctionTable(in_domain, out_domain, c.symbols[si].arity,
                                            std::move(table)));
    }

    // The search prunes on every column choice, so the witness must already
    // consist of polymorphisms; re-verify to fail loudly on any internal
    // inconsistency.
    for (const auto & [name, table] : result.tables)
        if (! is_polymorphism(table, t))
            throw std::logic_error("interpretation search produced a non-polymorphism for '" +
                                   name + "'");
    if (! satisfies_minor_by_cells(c, result))
        throw std::logic_error("interpretation search produced tables violating the condition");
    return result;
}

Interpretation parse_interpretation(const std::string & text)
{
    auto lines = detail::tokenize(text);
    if (lines.empty() || lines[0].tokens[0].text != "interpretation")
        throw ParseError(lines.empty() ? 1 : lines[0].line, 1, "expected 'interpretation'");

    Interpretation out;
    bool first_table = true;
    bool terminated = false;

    std::size_t pos = 1;
    while (pos < lines.size()) {
        const auto & l = lines[pos];
        if (l.tokens[0].text == "end") {
            terminated = true;
            ++pos;
            break;
        }
        if (l.tokens[0].text != "table")
            throw ParseError(l.line, l.tokens[0].column,
                             "expected 'table' or 'end', got '" + l.tokens[0].text + "'");
        if (l.tokens.size() != 5)
            throw ParseError(l.line, l.tokens[0].column,
                             "'table' expects a symbol and three integers");
        std::string symbol = l.tokens[1].text;
        int in_domain = detail::parse_int(l.tokens[2], l.line);
        int out_domain = detail::parse_int(l.tokens[3], l.line);
        int arity = detail::parse_int(l.tokens[4], l.line);
        ++pos;

        std::vector<int> entries;
        while (pos < lines.size() && lines[pos].tokens[0].text != "table" &&
               lines[pos].tokens[0].text != "end") {
            for (const auto & tok : lines[pos].tokens)
                entries.push_back(detail::parse_int(tok, lines[pos].line));
            ++pos;
        }
        if (out.tables.count(symbol))
            throw ParseError(l.line, l.tokens[1].column, "duplicate table for '" + symbol + "'");
        try {
            out.tables.emplace(symbol, FunctionTable(in_domain, out_domain, arity, std::move(entries)));
        }
        catch (const std::invalid_argument & e) {
            throw ParseError(l.line, 1, e.what());
        }
        if (first_table) {
            out.in_domain = in_domain;
            out.out_domain = out_domain;
            first_table = false;
        }
        else if (in_domain != out.in_domain || out_domain != out.out_domain) {
            throw ParseError(l.line, 1, "tables do not share common domains");
        }
    }
    if (! terminated)
        throw ParseError(lines.back().line, 1, "unterminated interpretation (missing 'end')");
    if (pos != lines.size())
        throw ParseError(lines[pos].line, 1, "trailing content after 'end'");
    return out;
}

std::string serialize_interpretation(const Interpretation & i)
{
    std::ostringstream out;
    out << "interpretation\n";
    for (const auto & [symbol, table] : i.tables) {
        out << "table " << symbol << ' ' << table.in_domain() << ' ' << table.out_domain() << ' '
            << table.arity() << '\n';
        const auto & t = table.table();
        for (std::size_t j = 0; j < t.size(); ++j)
            out << (j ? (j % 16 == 0 ? "\n" : " ") : "") << t[j];
        if (! t.empty())
            out << '\n';
    }
    out << "end\n";
    return out.str();
}

} // namespace pcsp
