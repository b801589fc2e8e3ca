#pragma once

#include <cstdint>

#include "ocspath/oca.hpp"
#include "ocspath/ocs.hpp"
#include "ocspath/zocs.hpp"

namespace ocspath {

struct GeneratedOcs {
    Ocs ocs;
    Config source;
    Config target;
};

// Deterministic 2n-state family whose unique source-to-target path has length
// exactly n*n: a climb chain feeding a decrement loop that drains one unit
// per n steps.  Requires n >= 2.
GeneratedOcs example1(int n);

// Family with coprime cycle lengths k and m whose shortest source-to-target
// path has length 2*k*m + 2 and must climb to counter k*m before descending.
// Requires coprime k, m >= 2.
GeneratedOcs example2(int k, int m);

// 4n-state family with nonzero endpoint counters: shortest paths cost at
// least n*n + n*(c_alpha + c_beta + 2).  Requires n >= 2, counters >= 0.
GeneratedOcs example3(int n, std::int64_t c_alpha, std::int64_t c_beta);

// Counter-based pseudorandom generators: transition (src,eff,dst) of a given
// guard class is present iff a hash of (seed, class, packed triple) falls
// below density * 2^64.  Reproducible across platforms; see the project
// README for the exact formula.
Ocs random_ocs(int n, double pos_density, double zero_density, std::uint64_t seed);

Oca random_oca(int n, double pos_density, double zero_density, int alphabet_size,
               double epsilon_prob, std::uint64_t seed);

ZOcs random_zocs(int n, double pos_density, double neg_density, double zero_density,
                 std::uint64_t seed);

// The mixing function behind the random generators.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace ocspath
