#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ocspath/ocs.hpp"

namespace ocspath {

// One-counter system over the integers: separate transition sets fire at
// positive, negative and zero counter values.  All effects are in {-1,0,1}.
struct ZOcs {
    int n = 0;
    std::vector<std::string> names;
    std::vector<Transition> t_pos;   // guard == Guard::pos
    std::vector<Transition> t_neg;   // guard == Guard::neg
    std::vector<Transition> t_zero;  // guard == Guard::zero

    static ZOcs make(int n, std::vector<Transition> pos, std::vector<Transition> neg,
                     std::vector<Transition> zero, std::vector<std::string> names = {});

    std::span<const Transition> out(const Config& c) const;
    std::optional<State> state_by_name(std::string_view name) const;

    friend bool operator==(const ZOcs&, const ZOcs&) = default;

  private:
    std::vector<std::uint32_t> pos_off_, neg_off_, zero_off_;
};

// Shortest path length between configurations of an n-state integer system
// is at most this bound.
inline std::int64_t z_length_bound(int n, std::int64_t c_alpha, std::int64_t c_beta) {
    return 56LL * n * n +
           static_cast<std::int64_t>(n) * (std::llabs(c_alpha) + std::llabs(c_beta));
}

// Mirrors the system across zero: positive and negative transition sets swap
// with negated effects, zero tests keep their states with negated effects.
// An involution.
ZOcs negate(const ZOcs& z);

// Mirrors a path across zero (negates every counter and effect).
Path z_negate_path(const Path& rho);

enum class Sign { plus, minus };

// Nonnegative restriction of z (Sign::plus) or of negate(z) (Sign::minus):
// keeps the matching half's transitions plus the zero tests whose effect
// stays on that side.
Ocs signed_projection(const ZOcs& z, Sign side);

// signed_projection plus a synthesized zero test (q,0,q') for every excursion
// of z through the opposite side: a path from (q,0) to (q',0) whose interior
// counters are all on the opposite side.  Runs of the result at nonnegative
// counters correspond exactly to runs of z with the opposite side collapsed.
Ocs augmented(const ZOcs& z, Sign side);

// Fires t at gamma under integer semantics (guard matches counter sign).
std::optional<Config> z_fire(const Config& gamma, const Transition& t);

// Validates chaining, sign guards and membership in z.
std::optional<PathViolation> z_validate_path(const ZOcs& z, const Path& rho);

// Shortest path in the integer system, or nullopt when unreachable.
std::optional<Path> z_shortest_path(const ZOcs& z, const Config& alpha, const Config& beta);

}  // namespace ocspath
