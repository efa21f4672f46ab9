#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pcsp/structure.hpp"

namespace pcsp {

/// One conjunct Symbol(v, v, ...); args index into the instance variable list.
struct Conjunct {
    std::string symbol;
    std::vector<int> args;

    friend bool operator==(const Conjunct &, const Conjunct &) = default;
};

/// A pp-sentence in prenex normal form. Every declared variable is implicitly
/// existentially quantified; equalities are explicit conjuncts v = w.
struct PPInstance {
    std::vector<std::string> variables;
    std::vector<Conjunct> conjuncts;
    std::vector<std::pair<int, int>> equalities;

    /// Index of a variable name, or -1.
    int var_index(const std::string & name) const;

    friend bool operator==(const PPInstance &, const PPInstance &) = default;
};

// Text format, '#' starts a comment:
//   instance
//   vars <v1> <v2> ...
//   <Symbol>(<v>,<v>,...)       one conjunct per line
//   eq <v> <v>                  optional equality conjuncts
//   end
//
// When a signature is supplied, conjunct symbols and arities are checked
// against it.
PPInstance parse_instance(const std::string & text, const Signature * signature = nullptr);

std::string serialize_instance(const PPInstance & inst);

/// Checks the instance against a signature; one line per violation.
std::vector<std::string> validate_instance(const PPInstance & inst, const Signature & signature);

/// Eliminates equality conjuncts by merging each equality class of variables
/// into its representative (the first member in declaration order). The
/// result has no equalities and is satisfiable over a structure iff the input
/// is. Idempotent.
PPInstance normalize(const PPInstance & inst);

} // namespace pcsp
