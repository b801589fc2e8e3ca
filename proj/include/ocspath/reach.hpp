#pragma once

#include <cstdint>
#include <optional>

#include "ocspath/ocs.hpp"

namespace ocspath {

// Any reachable zero-to-zero pair of an n-state system is connected by a path
// of this length or shorter; the library asserts this bound on its outputs.
inline std::int64_t zero_zero_length_bound(int n) {
    return 14LL * n * n;
}

// Length bound for arbitrary endpoint counters.
inline std::int64_t length_bound(int n, std::int64_t c_alpha, std::int64_t c_beta) {
    return zero_zero_length_bound(n) + static_cast<std::int64_t>(n) * std::max(c_alpha, c_beta);
}

// Counters below this threshold are "low"; a low path stays strictly below it.
inline std::int64_t low_counter_threshold(int n) {
    return 5LL * n;
}

// Explicit truncation caps for the breadth-first searches.  Raising sound
// caps never changes results; the defaults below are sound for their queries.
struct SearchCaps {
    std::int64_t depth_cap = 0;    // maximum path length explored
    std::int64_t counter_cap = 0;  // maximum counter value explored
};

SearchCaps default_caps(const Ocs& o, const Config& alpha, const Config& beta);

// Number of configurations a single search may visit; visited bitmaps and
// parent tables are sized by this.  Overridden by OCSPATH_MEM_BUDGET.
std::uint64_t memory_budget_bits();

// Shortest path between two configurations, or nullopt when unreachable.
// Deterministic: ties are broken by transition order.
std::optional<Path> shortest_path(const Ocs& o, const Config& alpha, const Config& beta);

// Same search under caller-supplied caps; exact for all paths within them.
std::optional<Path> shortest_path(const Ocs& o, const Config& alpha, const Config& beta,
                                  const SearchCaps& caps);

// Among zero-to-zero paths, minimizes the number of intermediate zero-counter
// configurations first and the length second.  The result visits no
// configuration twice.
std::optional<Path> min_zero_path(const Ocs& o, const Config& alpha, const Config& beta);

// Shortest arc from alpha to beta whose every counter stays below the low
// threshold, or nullopt when no such arc exists.  Endpoints must be at
// counter zero; alpha == beta yields the empty arc.
std::optional<Path> shortest_low_arc(const Ocs& o, const Config& alpha, const Config& beta);

// System whose runs at counter c mirror runs of o at counter c + level, where
// excursions of o below the level collapse into synthesized zero tests.  For
// every K: the result has a (p,0) -> (q,0) path of length K exactly when o
// has a (p,level) -> (q,level) path with K+1 configurations at or above the
// level.  level == 0 returns o itself.
Ocs build_lifted(const Ocs& o, std::int64_t level);

}  // namespace ocspath
