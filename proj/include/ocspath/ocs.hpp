#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ocspath/errors.hpp"

namespace ocspath {

using State = std::int32_t;

// Guard class of a transition: fireable at positive counters, at counter zero,
// or (for systems over the integers) at negative counters.
enum class Guard : std::uint8_t { pos = 0, zero = 1, neg = 2 };

std::string_view guard_name(Guard g);

struct Transition {
    State src = 0;
    std::int32_t eff = 0;  // counter effect, one of -1, 0, +1
    State dst = 0;
    Guard guard = Guard::pos;

    friend auto operator<=>(const Transition&, const Transition&) = default;
};

struct Config {
    State state = 0;
    std::int64_t counter = 0;

    friend auto operator<=>(const Config&, const Config&) = default;
};

struct ConfigHash {
    std::size_t operator()(const Config& c) const {
        std::uint64_t z = (static_cast<std::uint64_t>(c.state) << 40) ^
                          static_cast<std::uint64_t>(c.counter);
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return static_cast<std::size_t>(z ^ (z >> 31));
    }
};

using TransitionSeq = std::vector<Transition>;

// One-counter system over nonnegative counters.  States are the dense indices
// 0..n-1; `names` carries display names for serialization.  Transition sets
// are kept sorted and duplicate-free; treat instances as immutable once built.
struct Ocs {
    int n = 0;
    std::vector<std::string> names;
    std::vector<Transition> t_pos;   // guard == Guard::pos, eff in {-1,0,1}
    std::vector<Transition> t_zero;  // guard == Guard::zero, eff in {0,1}

    static Ocs make(int n, std::vector<Transition> pos, std::vector<Transition> zero,
                    std::vector<std::string> names = {});

    std::span<const Transition> out_pos(State q) const;
    std::span<const Transition> out_zero(State q) const;
    // Transitions fireable at the given configuration.
    std::span<const Transition> out(const Config& c) const;

    std::optional<State> state_by_name(std::string_view name) const;

    friend bool operator==(const Ocs&, const Ocs&) = default;

  private:
    std::vector<std::uint32_t> pos_off_;   // n+1 offsets into t_pos
    std::vector<std::uint32_t> zero_off_;  // n+1 offsets into t_zero
};

// A path is the list of (configuration, transition fired there) steps plus the
// final configuration.  An empty path is a single configuration.
struct Path {
    std::vector<std::pair<Config, Transition>> steps;
    Config target;

    Config source() const { return steps.empty() ? target : steps.front().first; }
    std::size_t length() const { return steps.size(); }

    static Path empty_at(const Config& c) { return Path{{}, c}; }

    friend bool operator==(const Path&, const Path&) = default;
};

// Sum of counter effects of a transition sequence.
std::int64_t effect(const TransitionSeq& sigma);

// True when consecutive transitions chain (dst of one is src of the next).
bool consistent(const TransitionSeq& sigma);

// All length()+1 configurations along a path, in order.
std::vector<Config> path_configs(const Path& rho);

// Transition sequence of a path, forgetting counters.
TransitionSeq proj(const Path& rho);

// Number of configurations with counter zero strictly inside the path.
std::int64_t intermediate_zeros(const Path& rho);

std::int64_t max_counter(const Path& rho);

// Fires t at gamma if the guard matches the counter sign, the source state
// matches and the resulting counter stays nonnegative.
std::optional<Config> fire(const Config& gamma, const Transition& t);

// Threads sigma through configurations starting at gamma.  Throws
// not_fireable_error with the first failing step index.
Path fasten(const Config& gamma, const TransitionSeq& sigma);

// Joins two paths; b must start where a ends.
Path concat(const Path& a, const Path& b);
Path concat(std::span<const Path> pieces);

struct PathViolation {
    std::size_t step;  // index of the offending step, length() for the target
    std::string rule;
};

// Checks chaining, guard/counter agreement and counter nonnegativity.
// Returns nullopt when the path is well formed.
std::optional<PathViolation> validate_path(const Path& rho);

// Additionally checks that every transition belongs to the system.
std::optional<PathViolation> validate_path_in(const Ocs& o, const Path& rho);

// Removes configuration repeats: repeatedly excises the segment between the
// earliest repeated configuration and its last occurrence.  Keeps endpoints,
// never increases the number of zero-counter configurations.
Path remove_repeats(const Path& rho);

// Cuts a path with zero endpoints at every zero-counter configuration.  Each
// piece is an arc: endpoints at counter zero, interior strictly positive.
std::vector<Path> split_arcs(const Path& rho);

}  // namespace ocspath
