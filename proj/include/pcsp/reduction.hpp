#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pcsp/condition.hpp"
#include "pcsp/instance.hpp"
#include "pcsp/solvers.hpp"
#include "pcsp/structure.hpp"

namespace pcsp {

/// Output of the instance-to-condition reduction, with the bookkeeping needed
/// to decode certificates later.
struct ReductionArtifacts {
    MinorCondition condition;
    // (instance variable, its symbol), in declaration order.
    std::vector<std::pair<std::string, std::string>> variable_symbols;
    // conjunct index -> its symbol.
    std::vector<std::string> conjunct_symbols;
    // relation symbol -> the fixed enumeration of its yes-side tuples used to
    // index the conjunct symbols' arguments.
    std::map<std::string, std::vector<std::vector<int>>> tuple_order;
};

/// Transforms a normalized instance over the template's signature into a
/// minor condition: one |A|-ary symbol per variable, one |R^A|-ary symbol per
/// conjunct, and for each conjunct position p the equation linking the
/// conjunct symbol (applied to the p-th components of the enumerated tuples)
/// with the variable symbol (applied to the domain in canonical order).
/// An instance true in the yes-structure yields a trivial condition; a
/// condition satisfied in Pol(yes, no) decodes to a no-side assignment.
/// Conjuncts over an empty yes-side relation are rejected.
ReductionArtifacts instance_to_condition(const PPInstance & inst, const PcspTemplate & t);

/// Decodes a satisfying interpretation into the assignment sending each
/// variable to its symbol's value on the canonical domain tuple (0,1,...).
/// The result is verified against the instance in the no-structure; a
/// failure throws CertificateError.
Assignment certificate_to_assignment(const Interpretation & interp,
                                     const ReductionArtifacts & artifacts,
                                     const PPInstance & inst, const PcspTemplate & t);

/// The reverse reduction: views each symbol's table as cells v_{f,t}, merges
/// cells along the minor equations, and emits, for every relation R and every
/// tuple choice of each symbol, the conjunct asserting the image row is in R.
/// The instance is true in s iff the condition is satisfied in Pol(s, s); for
/// a template (A, B), truth of the A-built instance in B coincides with
/// satisfaction in Pol(A, B).
PPInstance condition_to_instance(const MinorCondition & c, const RelationalStructure & s,
                                 SearchBudget * budget = nullptr);

// Sidecar format: one `map <instance-var> <symbol>` line per variable.
std::string serialize_sidecar(const ReductionArtifacts & artifacts);
std::vector<std::pair<std::string, std::string>> parse_sidecar(const std::string & text);

} // namespace pcsp
