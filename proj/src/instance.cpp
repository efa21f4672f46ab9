#include "pcsp/instance.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "line_reader.hpp"

namespace pcsp {

int PPInstance::var_index(const std::string & name) const
{
    auto it = std::find(variables.begin(), variables.end(), name);
    return it == variables.end() ? -1 : static_cast<int>(it - variables.begin());
}

PPInstance parse_instance(const std::string & text, const Signature * signature)
{
    auto lines = detail::tokenize(text);
    if (lines.empty())
        throw ParseError(1, 1, "empty input, expected 'instance'");

    std::size_t pos = 0;
    if (lines[pos].tokens[0].text != "instance")
        throw ParseError(lines[pos].line, lines[pos].tokens[0].column,
                         "expected 'instance', got '" + lines[pos].tokens[0].text + "'");
    if (lines[pos].tokens.size() != 1)
        throw ParseError(lines[pos].line, lines[pos].tokens[1].column,
                         "unexpected token after 'instance'");
    ++pos;

    PPInstance inst;
    std::map<std::string, int> index;
    bool terminated = false;

    auto lookup_var = [&](const detail::Token & tok, int line) {
        auto it = index.find(tok.text);
        if (it == index.end())
            throw ParseError(line, tok.column, "undeclared variable '" + tok.text + "'");
        return it->second;
    };

    for (; pos < lines.size(); ++pos) {
        const auto & l = lines[pos];
        const auto & kw = l.tokens[0];
        if (kw.text == "end") {
            if (l.tokens.size() != 1)
                throw ParseError(l.line, l.tokens[1].column, "unexpected token after 'end'");
            terminated = true;
            ++pos;
            break;
        }
        if (kw.text == "vars") {
            for (std::size_t i = 1; i < l.tokens.size(); ++i) {
                const auto & tok = l.tokens[i];
                if (! detail::is_identifier(tok.text))
                    throw ParseError(l.line, tok.column,
                                     "variable must be an identifier, got '" + tok.text + "'");
                if (index.count(tok.text))
                    throw ParseError(l.line, tok.column, "duplicate variable '" + tok.text + "'");
                index[tok.text] = static_cast<int>(inst.variables.size());
                inst.variables.push_back(tok.text);
            }
            continue;
        }
        if (kw.text == "eq") {
            if (l.tokens.size() != 3)
                throw ParseError(l.line, kw.column, "'eq' expects exactly two variables");
            int a = lookup_var(l.tokens[1], l.line);
            int b = lookup_var(l.tokens[2], l.line);
            inst.equalities.emplace_back(a, b);
            continue;
        }

        // Conjunct line: Symbol(v, v, ...)
        if (! detail::is_identifier(kw.text))
            throw ParseError(l.line, kw.column, "expected a relation symbol, got '" + kw.text + "'");
        std::size_t i = 1;
        if (i >= l.tokens.size() || l.tokens[i].text != "(")
            throw ParseError(l.line, kw.column + static_cast<int>(kw.text.size()),
                             "expected '(' after relation symbol");
        ++i;
        Conjunct c;
        c.symbol = kw.text;
        if (i < l.tokens.size() && l.tokens[i].text == ")") {
            ++i;
        }
        else {
            while (true) {
                if (i >= l.tokens.size())
                    throw ParseError(l.line, static_cast<int>(l.tokens.back().column) + 1,
                                     "unterminated argument list");
                c.args.push_back(lookup_var(l.tokens[i], l.line));
                ++i;
                if (i >= l.tokens.size())
                    throw ParseError(l.line, l.tokens[i - 1].column + 1, "expected ',' or ')'");
                if (l.tokens[i].text == ",") {
                    ++i;
                    continue;
                }
                if (l.tokens[i].text == ")") {
                    ++i;
                    break;
                }
                throw ParseError(l.line, l.tokens[i].column,
                                 "expected ',' or ')', got '" + l.tokens[i].text + "'");
            }
        }
        if (i != l.tokens.size())
            throw ParseError(l.line, l.tokens[i].column, "trailing tokens after conjunct");

        if (signature) {
            auto it = std::find_if(signature->begin(), signature->end(),
                                   [&](const SymbolArity & sa) { return sa.symbol == c.symbol; });
            if (it == signature->end())
                throw ParseError(l.line, kw.column, "unknown relation symbol '" + c.symbol + "'");
            if (it->arity != static_cast<int>(c.args.size()))
                throw ParseError(l.line, kw.column,
                                 "relation '" + c.symbol + "' has arity " + std::to_string(it->arity) +
                                     " but got " + std::to_string(c.args.size()) + " arguments");
        }
        inst.conjuncts.push_back(std::move(c));
    }

    if (! terminated)
        throw ParseError(lines.back().line, 1, "unterminated instance (missing 'end')");
    if (pos != lines.size())
        throw ParseError(lines[pos].line, 1, "trailing content after 'end'");
    return inst;
}

std::string serialize_instance(const PPInstance & inst)
{
    std::ostringstream out;
    out << "instance\n";
    out << "vars";
    for (const auto & v : inst.variables)
        out << ' ' << v;
    out << '\n';
    for (const auto & c : inst.conjuncts) {
        out << c.symbol << '(';
        for (std::size_t i = 0; i < c.args.size(); ++i)
            out << (i ? "," : "") << inst.variables[c.args[i]];
        out << ")\n";
    }
    for (const auto & [a, b] : inst.equalities)
        out << "eq " << inst.variables[a] << ' ' << inst.variables[b] << '\n';
    out << "end\n";
    return out.str();
}

std::vector<std::string> validate_instance(const PPInstance & inst, const Signature & signature)
{
    std::vector<std::string> report;
    int n = static_cast<int>(inst.variables.size());
    for (const auto & c : inst.conjuncts) {
        auto it = std::find_if(signature.begin(), signature.end(),
                               [&](const SymbolArity & sa) { return sa.symbol == c.symbol; });
        if (it == signature.end())
            report.push_back("unknown relation symbol '" + c.symbol + "'");
        else if (it->arity != static_cast<int>(c.args.size()))
            report.push_back("arity mismatch for '" + c.symbol + "'");
        for (int a : c.args)
            if (a < 0 || a >= n)
                report.push_back("conjunct argument index out of range");
    }
    for (const auto & [a, b] : inst.equalities)
        if (a < 0 || a >= n || b < 0 || b >= n)
            report.push_back("equality variable index out of range");
    return report;
}

PPInstance normalize(const PPInstance & inst)
{
    int n = static_cast<int>(inst.variables.size());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    // Union by smaller index so the representative is the first declared
    // member of each class.
    auto find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const auto & [a, b] : inst.equalities) {
        int ra = find(a), rb = find(b);
        if (ra != rb)
            parent[std::max(ra, rb)] = std::min(ra, rb);
    }

    PPInstance out;
    std::vector<int> new_index(n, -1);
    for (int v = 0; v < n; ++v) {
        if (find(v) == v) {
            new_index[v] = static_cast<int>(out.variables.size());
            out.variables.push_back(inst.variables[v]);
        }
    }
    for (const auto & c : inst.conjuncts) {
        Conjunct rewritten;
        rewritten.symbol = c.symbol;
        for (int a : c.args)
            rewritten.args.push_back(new_index[find(a)]);
        out.conjuncts.push_back(std::move(rewritten));
    }
    return out;
}

} // namespace pcsp
