#pragma once

#include <functional>
#include <vector>

#include "pcsp/budget.hpp"
#include "pcsp/function_table.hpp"
#include "pcsp/structure.hpp"

namespace pcsp {

/// True iff for every choice of arity-many tuples from ra (columns of a
/// matrix), applying f to the rows lands in rb. Checks all |ra|^arity column
/// choices. A nullary f is compatible iff its constant tuple lies in rb.
bool is_compatible(const FunctionTable & f, const Relation & ra, const Relation & rb,
                   SearchBudget * budget = nullptr);

/// Compatibility with every relation pair of the template.
bool is_polymorphism(const FunctionTable & f, const PcspTemplate & t,
                     SearchBudget * budget = nullptr);

/// A plain structure is treated as the template (a, a).
bool is_polymorphism(const FunctionTable & f, const RelationalStructure & a,
                     SearchBudget * budget = nullptr);

/// Emits exactly the arity-ary polymorphisms of the template, each once, in
/// lexicographic table order. Backtracks over table cells and abandons a
/// partial table as soon as some fully determined column choice violates a
/// no-side relation. The visitor may return false to stop; no further work is
/// done after abandonment.
void enumerate_polymorphisms(const PcspTemplate & t, int arity,
                             const std::function<bool(const FunctionTable &)> & visit,
                             SearchBudget * budget = nullptr);

/// Convenience collector.
std::vector<FunctionTable> all_polymorphisms(const PcspTemplate & t, int arity,
                                             SearchBudget * budget = nullptr);

} // namespace pcsp
