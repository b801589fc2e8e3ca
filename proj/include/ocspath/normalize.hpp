#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ocspath/ocs.hpp"
#include "ocspath/scc.hpp"

namespace ocspath {

// Shape of a normalized high arc: pref climbs out of the low band, up pumps a
// distinguished positive cycle, cap crosses between the pump anchors, down
// pumps a distinguished negative cycle and suff descends back to counter
// zero.  The concatenation pref,up,cap,down,suff is the arc.
struct NormalDecomposition {
    Path pref, up, cap, down, suff;

    int scc_up = -1;    // component supplying the pumped positive cycle
    int scc_down = -1;  // component supplying the pumped negative cycle

    std::int64_t up_cycle_effect = 0;    // effect of one positive cycle copy (> 0)
    std::int64_t down_cycle_effect = 0;  // magnitude of one negative cycle copy (> 0)
    std::int64_t up_repeats = 0;         // copies pumped on the way up
    std::int64_t down_repeats = 0;       // copies pumped on the way down
    std::int64_t residual_effect = 0;    // effect(pref) + effect(cap) + effect(suff)
    std::int64_t cap_length = 0;
};

struct NormalizedArc {
    Path arc;
    // Present exactly when the arc needed the pumped shape (no low arc exists).
    std::optional<NormalDecomposition> decomposition;
};

struct NormalizedPath {
    Path path;
    std::vector<NormalizedArc> arcs;
};

// Removes maximal infixes that start and end at the same state with effect
// divisible by modulus, repeatedly until all (state, prefix effect mod
// modulus) pairs along the sequence are distinct.  Preserves endpoints and
// effect modulo modulus; the result is shorter than modulus * state count.
TransitionSeq unpump_mod(const TransitionSeq& sigma, std::int64_t modulus);

// Smallest pump counts (a, b) with a * up_effect - b * down_effect == -residual,
// a * up_effect >= target and b * down_effect >= target, both products at most
// 2 * target + 2 * lcm(up_effect, down_effect).  residual must be divisible by
// gcd(up_effect, down_effect).
std::pair<std::int64_t, std::int64_t> choose_pump_counts(std::int64_t up_effect,
                                                         std::int64_t down_effect,
                                                         std::int64_t residual,
                                                         std::int64_t target);

// Independent checker for a decomposition: re-validates the concatenation and
// every structural condition from first principles.  Returns the names of
// violated conditions, empty when the decomposition is sound.
std::vector<std::string> verify_normal(const Ocs& o, const SccAnalysis& analysis,
                                       const NormalDecomposition& d);

// Rebuilds an equivalent arc of bounded length: either the shortest low arc
// between the endpoints, or a pumped arc whose decomposition passes
// verify_normal.  The input must be a valid arc of the system.
NormalizedArc normalize_arc(const Ocs& o, const SccAnalysis& analysis, const Path& arc);

// Shortest-by-zeros witness between two zero-counter configurations with
// every arc normalized.  The result preserves the minimal number of
// intermediate zero-counter configurations and has length at most
// zero_zero_length_bound(n).  Returns nullopt when beta is unreachable.
std::optional<NormalizedPath> normalize_path_detailed(const Ocs& o, const SccAnalysis& analysis,
                                                      const Config& alpha, const Config& beta);

std::optional<Path> normalize_path(const Ocs& o, const Config& alpha, const Config& beta);

}  // namespace ocspath
