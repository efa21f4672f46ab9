#include "pcsp/linear.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "pcsp/structure.hpp"
#include "line_reader.hpp"

namespace pcsp {

Rational parse_rational(const std::string & text)
{
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos)
            return Rational(BigInt(text));
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0)
            throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    }
    catch (const std::exception &) {
        throw std::invalid_argument("malformed rational '" + text + "'");
    }
}

std::string rational_to_string(const Rational & r)
{
    if (denominator(r) == 1)
        return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

Rational AffineForm::evaluate(const std::vector<Rational> & t) const
{
    Rational value = constant;
    for (std::size_t j = 0; j < coeffs.size(); ++j)
        if (! coeffs[j].is_zero())
            value += coeffs[j] * t[j];
    return value;
}

std::vector<Rational> ParametrizedSolution::evaluate(const std::vector<Rational> & t) const
{
    if (static_cast<int>(t.size()) != static_cast<int>(free_vars.size()))
        throw std::invalid_argument("parameter vector length does not match the free variables");
    std::vector<Rational> out;
    out.reserve(forms.size());
    for (const auto & form : forms)
        out.push_back(form.evaluate(t));
    return out;
}

std::optional<ParametrizedSolution> eliminate_rational(const RationalLinearSystem & sys)
{
    const int n = sys.num_vars;
    for (const auto & [coeffs, _] : sys.rows)
        if (static_cast<int>(coeffs.size()) != n)
            throw std::invalid_argument("row length does not match num_vars");

    // Working copy, reduced to row echelon form in place.
    std::vector<std::vector<Rational>> m; // n coefficients + constant
    for (const auto & [coeffs, rhs] : sys.rows) {
        std::vector<Rational> row = coeffs;
        row.push_back(rhs);
        m.push_back(std::move(row));
    }

    std::vector<int> pivot_col; // per pivot row
    std::size_t rank = 0;
    for (int col = 0; col < n && rank < m.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < m.size() && m[pivot][col].is_zero())
            ++pivot;
        if (pivot == m.size())
            continue;
        std::swap(m[rank], m[pivot]);

        const Rational inv = m[rank][col];
        for (int j = col; j <= n; ++j)
            m[rank][j] /= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == rank || m[r][col].is_zero())
                continue;
            const Rational factor = m[r][col];
            for (int j = col; j <= n; ++j)
                m[r][j] -= factor * m[rank][j];
        }
        pivot_col.push_back(col);
        ++rank;
    }

    for (std::size_t r = rank; r < m.size(); ++r)
        if (! m[r][n].is_zero())
            return std::nullopt; // row reduced to 0 = c with c nonzero

    ParametrizedSolution ps;
    ps.num_vars = n;
    std::vector<int> free_index(n, -1);
    {
        std::set<int> pivots(pivot_col.begin(), pivot_col.end());
        for (int v = 0; v < n; ++v)
            if (! pivots.count(v)) {
                free_index[v] = static_cast<int>(ps.free_vars.size());
                ps.free_vars.push_back(v);
            }
    }
    const int num_free = static_cast<int>(ps.free_vars.size());

    ps.forms.assign(n, AffineForm{Rational(0), std::vector<Rational>(num_free, Rational(0))});
    for (int v = 0; v < n; ++v)
        if (free_index[v] >= 0)
            ps.forms[v].coeffs[free_index[v]] = 1;
    for (std::size_t r = 0; r < rank; ++r) {
        const int v = pivot_col[r];
        ps.pivot_vars.push_back(v);
        ps.forms[v].constant = m[r][n];
        for (int f = 0; f < num_free; ++f) {
            const Rational & c = m[r][ps.free_vars[f]];
            if (! c.is_zero())
                ps.forms[v].coeffs[f] = -c;
        }
    }
    return ps;
}

std::optional<std::vector<Rational>> avoid_third(const ParametrizedSolution & ps)
{
    const Rational third = one_third();
    const int num_free = static_cast<int>(ps.free_vars.size());

    // Variables with no parameter dependence are fixed already.
    std::vector<std::vector<int>> last_nonzero(num_free); // parameter -> variables it settles
    for (int v = 0; v < ps.num_vars; ++v) {
        const AffineForm & form = ps.forms[v];
        int last = -1;
        for (int j = num_free - 1; j >= 0; --j)
            if (! form.coeffs[j].is_zero()) {
                last = j;
                break;
            }
        if (last < 0) {
            if (form.constant == third)
                return std::nullopt; // identically 1/3, unavoidable
        }
        else {
            last_nonzero[last].push_back(v);
        }
    }

    std::vector<Rational> t(num_free, Rational(0));
    for (int j = 0; j < num_free; ++j) {
        std::set<Rational> forbidden;
        for (int v : last_nonzero[j]) {
            const AffineForm & form = ps.forms[v];
            // After substituting t_0..t_{j-1}, the variable reads
            // c + coeffs[j] * t_j, which hits 1/3 at exactly one t_j.
            Rational c = form.constant;
            for (int i = 0; i < j; ++i)
                if (! form.coeffs[i].is_zero())
                    c += form.coeffs[i] * t[i];
            forbidden.insert((third - c) / form.coeffs[j]);
        }
        Rational candidate(0);
        while (forbidden.count(candidate))
            candidate += 1;
        t[j] = candidate;
    }

    auto point = ps.evaluate(t);
    for (const auto & x : point)
        if (x == third)
            throw std::logic_error("avoid_third produced a coordinate equal to 1/3");
    return point;
}

namespace {

    int mod_pow(long long base, long long exp, int p)
    {
        long long result = 1 % p;
        base %= p;
        while (exp > 0) {
            if (exp & 1)
                result = result * base % p;
            base = base * base % p;
            exp >>= 1;
        }
        return static_cast<int>(result);
    }

    int mod_inverse(int a, int p) { return mod_pow(a, p - 2, p); }

} // namespace

std::optional<std::vector<int>> solve_mod_p(const ModPSystem & sys)
{
    if (! is_prime(sys.p))
        throw std::invalid_argument("solve_mod_p requires a prime modulus, got " +
                                    std::to_string(sys.p));
    const int p = sys.p;
    const int n = sys.num_vars;

    std::vector<std::vector<int>> m;
    for (const auto & [coeffs, rhs] : sys.rows) {
        if (static_cast<int>(coeffs.size()) != n)
            throw std::invalid_argument("row length does not match num_vars");
        std::vector<int> row;
        row.reserve(n + 1);
        for (int c : coeffs)
            row.push_back(((c % p) + p) % p);
        row.push_back(((rhs % p) + p) % p);
        m.push_back(std::move(row));
    }

    std::vector<int> pivot_col;
    std::size_t rank = 0;
    for (int col = 0; col < n && rank < m.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < m.size() && m[pivot][col] == 0)
            ++pivot;
        if (pivot == m.size())
            continue;
        std::swap(m[rank], m[pivot]);
        const int inv = mod_inverse(m[rank][col], p);
        for (int j = col; j <= n; ++j)
            m[rank][j] = static_cast<int>(static_cast<long long>(m[rank][j]) * inv % p);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == rank || m[r][col] == 0)
                continue;
            const int factor = m[r][col];
            for (int j = col; j <= n; ++j)
                m[r][j] = static_cast<int>(
                    ((m[r][j] - static_cast<long long>(factor) * m[rank][j]) % p + p) % p);
        }
        pivot_col.push_back(col);
        ++rank;
    }
    for (std::size_t r = rank; r < m.size(); ++r)
        if (m[r][n] != 0)
            return std::nullopt;

    std::vector<int> solution(n, 0);
    for (std::size_t r = 0; r < rank; ++r)
        solution[pivot_col[r]] = m[r][n];
    return solution;
}

ModPSystem parse_mod_p_system(const std::string & text)
{
    auto lines = detail::tokenize(text);
    if (lines.empty() || lines[0].tokens[0].text != "modp")
        throw ParseError(lines.empty() ? 1 : lines[0].line, 1, "expected 'modp <p>'");
    if (lines[0].tokens.size() != 2)
        throw ParseError(lines[0].line, lines[0].tokens[0].column, "'modp' expects one integer");

    ModPSystem sys;
    sys.p = detail::parse_int(lines[0].tokens[1], lines[0].line);

    bool terminated = false;
    std::size_t pos = 1;
    for (; pos < lines.size(); ++pos) {
        const auto & l = lines[pos];
        if (l.tokens[0].text == "end") {
            terminated = true;
            ++pos;
            break;
        }
        std::vector<int> coeffs;
        std::size_t i = 0;
        while (i < l.tokens.size() && l.tokens[i].text != "|")
            coeffs.push_back(detail::parse_int(l.tokens[i++], l.line));
        if (i >= l.tokens.size())
            throw ParseError(l.line, 1, "row is missing the '| <constant>' part");
        ++i;
        if (i + 1 != l.tokens.size())
            throw ParseError(l.line, l.tokens[i].column, "expected exactly one constant after '|'");
        int rhs = detail::parse_int(l.tokens[i], l.line);

        if (sys.rows.empty())
            sys.num_vars = static_cast<int>(coeffs.size());
        else if (static_cast<int>(coeffs.size()) != sys.num_vars)
            throw ParseError(l.line, 1, "rows have inconsistent lengths");
        sys.rows.emplace_back(std::move(coeffs), rhs);
    }
    if (! terminated)
        throw ParseError(lines.back().line, 1, "unterminated system (missing 'end')");
    if (pos != lines.size())
        throw ParseError(lines[pos].line, 1, "trailing content after 'end'");
    return sys;
}

std::string serialize_mod_p_system(const ModPSystem & sys)
{
    std::ostringstream out;
    out << "modp " << sys.p << '\n';
    for (const auto & [coeffs, rhs] : sys.rows) {
        for (int c : coeffs)
            out << c << ' ';
        out << "| " << rhs << '\n';
    }
    out << "end\n";
    return out.str();
}

} // namespace pcsp
