#pragma once

// Reference implementations used by the verification harness. These
// deliberately avoid the backtracking search paths they are compared
// against: raw table enumeration plus the definitional checks.

#include <cstdint>
#include <optional>
#include <vector>

#include "pcsp/condition.hpp"
#include "pcsp/function_table.hpp"
#include "pcsp/polymorphism.hpp"
#include "pcsp/structure.hpp"

namespace pcsp {

/// All |out|^(|in|^arity) tables, in lexicographic order. Throws
/// std::invalid_argument when that count exceeds the cap.
std::vector<FunctionTable> all_tables(int in_domain, int out_domain, int arity,
                                      std::uint64_t cap = 10'000'000);

/// The raw-filter oracle: every table, kept iff is_polymorphism holds.
std::vector<FunctionTable> polymorphisms_by_filter(const PcspTemplate & t, int arity,
                                                   std::uint64_t cap = 10'000'000);

/// Exhaustive interpretation search: per symbol, scan the full table space
/// and keep the polymorphisms, then try every combination against
/// satisfies(). Independent of the cell-merging search.
std::optional<Interpretation> find_interpretation_exhaustive(const MinorCondition & c,
                                                             const PcspTemplate & t,
                                                             std::uint64_t cap = 10'000'000);

} // namespace pcsp
