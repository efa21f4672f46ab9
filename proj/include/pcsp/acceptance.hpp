#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace pcsp {

struct CriterionResult {
    int index = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/// Runs one verification criterion (1..8). Criteria with randomized
/// harnesses derive their generators deterministically from the seed.
CriterionResult run_criterion(int index, std::uint64_t seed = 0);

/// Runs the listed criteria (all of them when empty), printing one pass/fail
/// line each to log when given.
std::vector<CriterionResult> run_acceptance(const std::vector<int> & which = {},
                                            std::uint64_t seed = 0,
                                            std::ostream * log = nullptr);

} // namespace pcsp
