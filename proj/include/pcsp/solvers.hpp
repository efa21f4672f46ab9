#pragma once

#include <optional>
#include <vector>

#include "pcsp/budget.hpp"
#include "pcsp/instance.hpp"
#include "pcsp/linear.hpp"
#include "pcsp/structure.hpp"

namespace pcsp {

/// A total assignment, indexed like the instance variable list.
using Assignment = std::vector<int>;

/// True iff the assignment satisfies every conjunct and equality of the
/// instance over the structure.
bool satisfies_instance(const PPInstance & inst, const RelationalStructure & s,
                        const Assignment & assignment);

/// Exhaustive backtracking over |s|^#vars assignments with per-conjunct
/// pruning. Returns a witness or a definitive unsatisfiable verdict.
std::optional<Assignment> brute_force_decide(const PPInstance & inst,
                                             const RelationalStructure & s,
                                             SearchBudget * budget = nullptr);

enum class PcspVerdict { Yes, No, Indeterminate };

struct PcspResult {
    PcspVerdict verdict;
    std::optional<Assignment> yes_witness; // satisfying assignment in t.yes
};

/// Yes when true in the yes-structure, No when false in the no-structure,
/// Indeterminate otherwise (surfaced explicitly; a promise algorithm may
/// answer anything there).
PcspResult brute_force_pcsp(const PPInstance & inst, const PcspTemplate & t,
                            SearchBudget * budget = nullptr);

/// Implication-graph 2-SAT. Conjuncts must use the R_ab relations of the
/// built-in 2sat structure; throws std::invalid_argument otherwise.
std::optional<Assignment> solve_2sat(const PPInstance & inst);

/// Reads each conjunct L_abcd(x,y,z) as the equation ax+by+cz = d over Z_p,
/// with repeated variables contributing coefficient multiplicity. The
/// structure must be the built-in lin(p).
ModPSystem lin_instance_to_system(const PPInstance & inst, const RelationalStructure & lin);

/// One row per ternary conjunct over the one-in-three relation: each
/// occurrence of a variable contributes coefficient 1, the constant is 1.
RationalLinearSystem build_1in3_system(const PPInstance & inst);

/// The exact-rational pipeline for the (onein3, nae 2) template: build the
/// system, eliminate, pick a rational point avoiding 1/3, threshold at 1/3.
/// Assumes the promise that the instance has a one-in-three assignment;
/// throws PromiseViolationError when any stage fails or the final
/// not-all-equal verification does (the input was then not a Yes-instance).
Assignment solve_1in3_nae(const PPInstance & inst);

/// The rational point the pipeline rounds, exposed for inspection.
std::vector<Rational> solve_1in3_rational_point(const PPInstance & inst);

} // namespace pcsp
