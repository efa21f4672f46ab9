#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace pcsp {

/// A total function {0..in-1}^arity -> {0..out-1} stored as a flat table
/// indexed by the radix-|in| encoding of the argument tuple, first argument
/// most significant.
class FunctionTable {
public:
    FunctionTable(int in_domain, int out_domain, int arity, std::vector<int> table);

    int in_domain() const { return in_domain_; }
    int out_domain() const { return out_domain_; }
    int arity() const { return arity_; }
    const std::vector<int> & table() const { return table_; }

    std::uint64_t index_of(std::span<const int> args) const;
    int apply(std::span<const int> args) const;
    int apply(std::initializer_list<int> args) const;

    friend bool operator==(const FunctionTable &, const FunctionTable &) = default;
    friend bool operator<(const FunctionTable & a, const FunctionTable & b)
    {
        return a.table_ < b.table_;
    }

private:
    int in_domain_;
    int out_domain_;
    int arity_;
    std::vector<int> table_;
};

/// Number of table cells |in|^arity; throws std::invalid_argument when the
/// table would not fit in memory.
std::uint64_t table_size(int in_domain, int arity);

/// The arity-ary projection to coordinate i (1-based) on the given domain.
FunctionTable projection(int arity, int coordinate, int domain);

/// Ternary majority on {0,1}.
FunctionTable majority2();

/// f(x_1..x_k) = sum coeffs[i] * x_i mod p. Requires p prime and the
/// coefficient sum congruent to 1 mod p.
FunctionTable affine_mod(int p, const std::vector<int> & coeffs);

/// k-ary 1/3-threshold on {0,1}: 1 iff (sum x_i)/k > 1/3. Requires k not
/// divisible by 3 (at a multiple of 3 the threshold could be hit exactly).
FunctionTable threshold13(int k);

// Text format:
//   fn <in_n> <out_n> <arity>
//   <table entries in index order, whitespace separated, any line split>
//   end
FunctionTable parse_function_table(const std::string & text);
std::string serialize_function_table(const FunctionTable & f);

} // namespace pcsp
