#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ocspath/ocs.hpp"

namespace ocspath {

// One-counter automaton: a one-counter system whose transitions carry a
// letter or epsilon, with initial and final state sets.  A word is accepted
// when it labels a path from some (initial, 0) to a final state at any
// counter.
struct Oca {
    Ocs ocs;
    std::vector<std::string> alphabet;
    std::vector<std::int32_t> label_pos;   // parallel to ocs.t_pos; -1 = epsilon
    std::vector<std::int32_t> label_zero;  // parallel to ocs.t_zero; -1 = epsilon
    std::vector<State> initial_states;     // sorted, unique
    std::vector<State> final_states;       // sorted, unique

    struct LabeledTransition {
        Transition t;
        std::int32_t label = -1;  // index into alphabet, -1 = epsilon
    };

    static Oca make(int n, std::vector<LabeledTransition> transitions,
                    std::vector<std::string> alphabet, std::vector<State> initial,
                    std::vector<State> finals, std::vector<std::string> names = {});

    std::int32_t label_of(const Transition& t) const;

    friend bool operator==(const Oca&, const Oca&) = default;
};

// Shortest accepted word, or nullopt for the empty language.  Epsilon steps
// cost nothing; the search is exact because a nonempty language always
// contains a word of length at most zero_zero_length_bound(n) witnessed
// within that counter range.
std::optional<std::vector<std::string>> shortest_word(const Oca& a);

}  // namespace ocspath
