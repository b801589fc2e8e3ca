#pragma once

#include <cstdint>
#include <optional>

#include "ocspath/ocs.hpp"

namespace ocspath {

// Reference solvers used to cross-check the main search code.  Deliberately
// plain breadth-first / uniform-cost searches over hash maps; they share only
// the core types with the rest of the library and none of the solver code.

// Shortest path length within the given caps, or nullopt when no path stays
// inside them.
std::optional<std::int64_t> oracle_shortest_path(const Ocs& o, const Config& alpha,
                                                 const Config& beta, std::int64_t depth_cap,
                                                 std::int64_t counter_cap);

struct OracleZeroCost {
    std::int64_t zeros = 0;  // intermediate zero-counter configurations
    std::int64_t length = 0;
};

// Lexicographically minimal (zeros, length) over zero-to-zero paths within
// the caps.
std::optional<OracleZeroCost> oracle_min_zero(const Ocs& o, const Config& alpha,
                                              const Config& beta, std::int64_t depth_cap,
                                              std::int64_t counter_cap);

}  // namespace ocspath
