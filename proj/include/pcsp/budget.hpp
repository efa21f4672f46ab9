#pragma once

#include <cstdint>

#include "pcsp/errors.hpp"

namespace pcsp {

inline constexpr std::uint64_t default_node_budget = 100'000'000;

/// Node-visit accounting for the backtracking searches. Every search charges
/// one unit per visited node and fails loudly once the limit is hit; results
/// are never silently truncated.
class SearchBudget {
public:
    explicit SearchBudget(std::uint64_t limit = default_node_budget) : limit_(limit) {}

    void charge(std::uint64_t n = 1)
    {
        used_ += n;
        if (used_ > limit_)
            throw ResourceLimitError("search budget of " + std::to_string(limit_) +
                                     " node visits exhausted");
    }

    std::uint64_t used() const { return used_; }
    std::uint64_t limit() const { return limit_; }

private:
    std::uint64_t limit_;
    std::uint64_t used_ = 0;
};

} // namespace pcsp
