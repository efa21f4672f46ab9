#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pcsp/budget.hpp"

namespace pcsp {

/// A named finite relation over domain elements 0..n-1. Tuples are kept
/// sorted lexicographically and deduplicated (set semantics).
struct Relation {
    std::string symbol;
    int arity = 0;
    std::vector<std::vector<int>> tuples;
};

/// Sorts and deduplicates the tuple list.
Relation make_relation(std::string symbol, int arity, std::vector<std::vector<int>> tuples);

struct SymbolArity {
    std::string symbol;
    int arity = 0;

    friend bool operator==(const SymbolArity &, const SymbolArity &) = default;
};

/// Shared shape of similar structures: relation symbols with arities, in
/// declaration order.
using Signature = std::vector<SymbolArity>;

/// A finite relational structure: a domain {0,..,domain_size-1} together with
/// named relations.
struct RelationalStructure {
    std::string name;
    int domain_size = 0;
    std::vector<Relation> relations;

    Signature signature() const;
    const Relation * find_relation(const std::string & symbol) const;

    friend bool operator==(const RelationalStructure &, const RelationalStructure &) = default;
};

/// Checks every invariant and returns one human-readable line per violation;
/// an empty report means the structure is well-formed. Never throws.
std::vector<std::string> validate_structure(const RelationalStructure & s);

bool similar(const RelationalStructure & a, const RelationalStructure & b);

/// Total map from a's domain to b's domain, indexed by domain element.
using HomMap = std::vector<int>;

/// True iff h maps every tuple of every relation of a into the corresponding
/// relation of b. Throws std::invalid_argument on signature mismatch or a
/// non-total map.
bool is_homomorphism(const HomMap & h, const RelationalStructure & a,
                     const RelationalStructure & b);

/// Exhaustive backtracking over all |b|^|a| maps with per-tuple pruning.
/// Returns a witness or, only after the search space is exhausted, nothing.
std::optional<HomMap> find_homomorphism(const RelationalStructure & a,
                                        const RelationalStructure & b,
                                        SearchBudget * budget = nullptr);

/// A promise template: a pair of similar structures with a homomorphism from
/// yes to no, verified at construction. The relations of `no` are reordered
/// to match the signature of `yes`.
struct PcspTemplate {
    RelationalStructure yes;
    RelationalStructure no;
    HomMap witness;
};

/// Validates similarity, pairs relations of `no` by symbol name, and either
/// verifies the supplied witness or searches for one.
PcspTemplate make_template(RelationalStructure yes, RelationalStructure no,
                           std::optional<HomMap> witness = std::nullopt,
                           SearchBudget * budget = nullptr);

/// The CSP case: the template (a, a) with the identity witness.
PcspTemplate make_csp_template(RelationalStructure a);

/// Built-in structures and templates:
///   "3sat"                     -> (E_2; R_000..R_111), R_abc = E_2^3 minus (a,b,c)
///   "2sat"                     -> (E_2; R_00..R_11), R_ab = E_2^2 minus (a,b)
///   "k-coloring" k             -> (E_k; N), N the binary inequality relation
///   "nae" k                    -> (E_k; NAE), ternary not-all-equal
///   "onein3"                   -> (E_2; R), R = {(1,0,0),(0,1,0),(0,0,1)}
///   "lin" p                    -> (E_p; L_abcd for all a,b,c,d), p prime,
///                                 L_abcd = {(x,y,z) : ax+by+cz = d mod p}
///   "onein3-vs-nae"            -> template (onein3, nae 2)
///   "coloring-vs-coloring" k l -> template (k-coloring k, k-coloring l), k <= l
///   "nae-vs-nae" k l           -> template (nae k, nae l), k <= l
/// Throws std::invalid_argument on unknown names or invalid parameters.
std::variant<RelationalStructure, PcspTemplate> builtin(const std::string & name,
                                                        const std::vector<int> & params = {});

RelationalStructure builtin_structure(const std::string & name,
                                      const std::vector<int> & params = {});

/// Structure names resolve to the CSP template (a, a).
PcspTemplate builtin_template(const std::string & name, const std::vector<int> & params = {});

/// Parses "name" or "name:p1:p2" into a builtin invocation.
std::variant<RelationalStructure, PcspTemplate> builtin_from_spec(const std::string & spec);

// Line-oriented text format, '#' starts a comment:
//   structure <name>
//   domain <n>
//   relation <Symbol> <arity>
//   <one tuple per line: space-separated integers>
//   end
// A template file holds two such blocks headed `yes-structure <name>` and
// `no-structure <name>`.
RelationalStructure parse_structure(const std::string & text);
std::string serialize_structure(const RelationalStructure & s);
PcspTemplate parse_template(const std::string & text, SearchBudget * budget = nullptr);
std::string serialize_template(const PcspTemplate & t);

bool is_prime(int p);

} // namespace pcsp
