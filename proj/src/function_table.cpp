#include "pcsp/function_table.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

#include "pcsp/structure.hpp"
#include "line_reader.hpp"

namespace pcsp {

namespace {
    constexpr std::uint64_t max_table_cells = 100'000'000;
}

std::uint64_t table_size(int in_domain, int arity)
{
    std::uint64_t size = 1;
    for (int i = 0; i < arity; ++i) {
        size *= static_cast<std::uint64_t>(in_domain);
        if (size > max_table_cells)
            throw std::invalid_argument("function table with " + std::to_string(in_domain) + "^" +
                                        std::to_string(arity) + " cells is too large");
    }
    return size;
}

FunctionTable::FunctionTable(int in_domain, int out_domain, int arity, std::vector<int> table)
    : in_domain_(in_domain), out_domain_(out_domain), arity_(arity), table_(std::move(table))
{
    if (in_domain_ <= 0 || out_domain_ <= 0)
        throw std::invalid_argument("function table domains must be positive");
    if (arity_ < 0)
        throw std::invalid_argument("function table arity must be non-negative");
    if (table_.size() != table_size(in_domain_, arity_))
        throw std::invalid_argument("function table has " + std::to_string(table_.size()) +
                                    " entries, expected " +
                                    std::to_string(table_size(in_domain_, arity_)));
    for (int v : table_)
        if (v < 0 || v >= out_domain_)
            throw std::invalid_argument("function table entry " + std::to_string(v) +
                                        " outside output domain");
}

std::uint64_t FunctionTable::index_of(std::span<const int> args) const
{
    if (static_cast<int>(args.size()) != arity_)
        throw std::invalid_argument("expected " + std::to_string(arity_) + " arguments, got " +
                                    std::to_string(args.size()));
    std::uint64_t index = 0;
    for (int a : args) {
        if (a < 0 || a >= in_domain_)
            throw std::invalid_argument("argument " + std::to_string(a) + " outside input domain");
        index = index * static_cast<std::uint64_t>(in_domain_) + static_cast<std::uint64_t>(a);
    }
    return index;
}

int FunctionTable::apply(std::span<const int> args) const { return table_[index_of(args)]; }

int FunctionTable::apply(std::initializer_list<int> args) const
{
    return apply(std::span<const int>(args.begin(), args.size()));
}

FunctionTable projection(int arity, int coordinate, int domain)
{
    if (coordinate < 1 || coordinate > arity)
        throw std::invalid_argument("projection coordinate " + std::to_string(coordinate) +
                                    " outside 1.." + std::to_string(arity));
    std::uint64_t size = table_size(domain, arity);
    std::vector<int> table(size);
    // Argument i-th digit of the index has stride domain^(arity-i).
    std::uint64_t stride = 1;
    for (int i = arity; i > coordinate; --i)
        stride *= static_cast<std::uint64_t>(domain);
    for (std::uint64_t idx = 0; idx < size; ++idx)
        table[idx] = static_cast<int>((idx / stride) % static_cast<std::uint64_t>(domain));
    return FunctionTable(domain, domain, arity, std::move(table));
}

FunctionTable majority2()
{
    std::vector<int> table(8);
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z)
                table[(x * 2 + y) * 2 + z] = (x + y + z >= 2) ? 1 : 0;
    return FunctionTable(2, 2, 3, std::move(table));
}

FunctionTable affine_mod(int p, const std::vector<int> & coeffs)
{
    if (! is_prime(p))
        throw std::invalid_argument("affine_mod requires a prime modulus");
    long long sum = 0;
    for (int c : coeffs) {
        if (c < 0 || c >= p)
            throw std::invalid_argument("affine coefficient outside 0..p-1");
        sum += c;
    }
    if (sum % p != 1)
        throw std::invalid_argument("affine coefficients must sum to 1 mod p");

    int k = static_cast<int>(coeffs.size());
    std::uint64_t size = table_size(p, k);
    std::vector<int> table(size);
    std::vector<int> args(k, 0);
    for (std::uint64_t idx = 0; idx < size; ++idx) {
        long long value = 0;
        for (int i = 0; i < k; ++i)
            value += static_cast<long long>(coeffs[i]) * args[i];
        table[idx] = static_cast<int>(value % p);
        for (int i = k - 1; i >= 0; --i) {
            if (++args[i] < p)
                break;
            args[i] = 0;
        }
    }
    return FunctionTable(p, p, k, std::move(table));
}

FunctionTable threshold13(int k)
{
    if (k <= 0 || k % 3 == 0)
        throw std::invalid_argument("threshold13 requires a positive arity not divisible by 3");
    std::uint64_t size = table_size(2, k);
    std::vector<int> table(size);
    for (std::uint64_t idx = 0; idx < size; ++idx) {
        // Binary domain: the radix-2 index bits are the argument values.
        int ones = __builtin_popcountll(idx);
        table[idx] = (3 * ones > k) ? 1 : 0; // sum/k > 1/3  <=>  3*sum > k
    }
    return FunctionTable(2, 2, k, std::move(table));
}

FunctionTable parse_function_table(const std::string & text)
{
    auto lines = detail::tokenize(text);
    if (lines.empty() || lines[0].tokens[0].text != "fn")
        throw ParseError(lines.empty() ? 1 : lines[0].line, 1, "expected 'fn <in> <out> <arity>'");
    const auto & head = lines[0];
    if (head.tokens.size() != 4)
        throw ParseError(head.line, head.tokens[0].column, "'fn' expects exactly three integers");
    int in_domain = detail::parse_int(head.tokens[1], head.line);
    int out_domain = detail::parse_int(head.tokens[2], head.line);
    int arity = detail::parse_int(head.tokens[3], head.line);

    std::vector<int> table;
    bool terminated = false;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].tokens[0].text == "end") {
            terminated = true;
            if (i + 1 != lines.size())
                throw ParseError(lines[i + 1].line, 1, "trailing content after 'end'");
            break;
        }
        for (const auto & tok : lines[i].tokens)
            table.push_back(detail::parse_int(tok, lines[i].line));
    }
    if (! terminated)
        throw ParseError(lines.back().line, 1, "unterminated table (missing 'end')");
    try {
        return FunctionTable(in_domain, out_domain, arity, std::move(table));
    }
    catch (const std::invalid_argument & e) {
        throw ParseError(head.line, 1, e.what());
    }
}

std::string serialize_function_table(const FunctionTable & f)
{
    std::ostringstream out;
    out << "fn " << f.in_domain() << ' ' << f.out_domain() << ' ' << f.arity() << '\n';
    const auto & t = f.table();
    for (std::size_t i = 0; i < t.size(); ++i)
        out << (i ? (i % 16 == 0 ? "\n" : " ") : "") << t[i];
    if (! t.empty())
        out << '\n';
    out << "end\n";
    return out.str();
}

} // namespace pcsp
