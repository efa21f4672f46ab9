#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pcsp/budget.hpp"
#include "pcsp/function_table.hpp"
#include "pcsp/structure.hpp"

namespace pcsp {

/// A term over function symbols and variables: either a bare variable or a
/// symbol applied to child terms.
struct Term {
    bool is_variable = false;
    std::string head;
    std::vector<Term> children;

    static Term variable(std::string name) { return Term{true, std::move(name), {}}; }
    static Term apply(std::string symbol, std::vector<Term> args)
    {
        return Term{false, std::move(symbol), std::move(args)};
    }

    friend bool operator==(const Term &, const Term &) = default;
};

struct SymbolDecl {
    std::string name;
    int arity = 0;

    friend bool operator==(const SymbolDecl &, const SymbolDecl &) = default;
};

/// A finite set of term equations over declared function symbols.
struct StrongMaltsevCondition {
    std::vector<SymbolDecl> symbols;
    std::vector<std::pair<Term, Term>> equations;

    int arity_of(const std::string & symbol) const; // -1 when undeclared
};

/// One side of a minor equation: a single symbol applied to variables.
struct MinorSide {
    std::string symbol;
    std::vector<std::string> vars;

    friend bool operator==(const MinorSide &, const MinorSide &) = default;
};

struct MinorEquation {
    MinorSide lhs;
    MinorSide rhs;

    friend bool operator==(const MinorEquation &, const MinorEquation &) = default;
};

/// The nesting-free case: each equation side has exactly one occurrence of a
/// function symbol.
struct MinorCondition {
    std::vector<SymbolDecl> symbols;
    std::vector<MinorEquation> equations;

    int arity_of(const std::string & symbol) const;

    friend bool operator==(const MinorCondition &, const MinorCondition &) = default;
};

/// Classifies a condition as minor; nullopt when some side nests symbols or
/// is a bare variable.
std::optional<MinorCondition> as_minor(const StrongMaltsevCondition & c);

StrongMaltsevCondition to_strong(const MinorCondition & c);

// Text format, '#' starts a comment:
//   condition
//   sym <name> <arity>
//   eq <term> = <term>        terms: name(args) with nesting, or a bare variable
//   end
StrongMaltsevCondition parse_condition(const std::string & text);
std::string serialize_condition(const StrongMaltsevCondition & c);
std::string serialize_condition(const MinorCondition & c);

/// Assigns every condition symbol a function table over one (in, out) pair.
struct Interpretation {
    int in_domain = 0;
    int out_domain = 0;
    std::map<std::string, FunctionTable> tables;
};

/// Validates that the interpretation covers the condition's symbols at the
/// declared arities; one line per violation.
std::vector<std::string> validate_interpretation(const Interpretation & i,
                                                 const std::vector<SymbolDecl> & symbols);

/// Recursive term evaluation. Bare variables resolve through the assignment;
/// nesting requires in_domain == out_domain (a value produced by one symbol
/// is fed into another).
int evaluate_term(const Term & t, const Interpretation & interp,
                  const std::map<std::string, int> & assignment);

/// True iff every equation holds for every assignment of its variables into
/// the in-domain. Exhausts |in|^(#vars) assignments per equation.
bool satisfies(const StrongMaltsevCondition & c, const Interpretation & interp);
bool satisfies(const MinorCondition & c, const Interpretation & interp);

/// Independent check used by the interpretation search: links table cells
/// directly (cell f[radix(h . u)] must equal cell g[radix(h . v)] for every
/// variable assignment h) without going through term evaluation.
bool satisfies_minor_by_cells(const MinorCondition & c, const Interpretation & interp);

/// A projection choice per symbol (1-based coordinates) witnessing triviality.
using ProjectionWitness = std::map<std::string, int>;

/// Decides whether the condition is satisfied by projections on a two-element
/// set. Purely syntactic: under coordinates i for f and j for g, the equation
/// f(u) = g(v) holds for all two-element assignments iff u_i and v_j are the
/// same variable. Backtracks over the coordinate choices.
std::optional<ProjectionWitness> is_trivial(const MinorCondition & c);

/// Exhaustive projection-interpretation search on a two-element set going
/// through satisfies(); the slow, general fallback. Works for arbitrary
/// strong Maltsev conditions and serves as an independent oracle for
/// is_trivial on minor ones.
std::optional<ProjectionWitness> is_trivial_by_projections(const StrongMaltsevCondition & c);

/// Builds the interpretation picked out by a projection witness (projections
/// on the given domain).
Interpretation witness_interpretation(const ProjectionWitness & w,
                                      const std::vector<SymbolDecl> & symbols, int domain);

/// Decides whether the condition is satisfied in Pol(yes, no): joint
/// backtracking over the cells of all symbol tables with minor equations
/// propagated by cell merging and partial tables pruned by polymorphism
/// compatibility. Arities must not exceed max_arity. The returned tables are
/// re-verified to be polymorphisms.
std::optional<Interpretation> find_satisfying_interpretation(const MinorCondition & c,
                                                             const PcspTemplate & t,
                                                             int max_arity,
                                                             SearchBudget * budget = nullptr);

// Interpretation text format:
//   interpretation
//   table <symbol> <in_n> <out_n> <arity>
//   <entries, whitespace separated, until the next keyword>
//   end
Interpretation parse_interpretation(const std::string & text);
std::string serialize_interpretation(const Interpretation & i);

} // namespace pcsp
