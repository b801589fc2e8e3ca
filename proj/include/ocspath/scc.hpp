#pragma once

#include <vector>

#include "ocspath/ocs.hpp"

namespace ocspath {

// Strongly connected components of the positive-transition multigraph, with a
// distinguished simple cycle of positive (respectively negative) effect per
// component that has one.  The distinguished cycles are fixed per analysis so
// that every later construction reuses the same ones.
struct SccAnalysis {
    std::vector<int> component_of;  // state -> component id
    std::vector<int> scc_size;      // component id -> number of states

    std::vector<char> pos_enabled;  // component has a cycle with effect > 0
    std::vector<char> neg_enabled;  // component has a cycle with effect < 0

    // Distinguished simple cycles, empty when not enabled.  Each starts and
    // ends at its base state, has length <= component size, and pairwise
    // distinct states.
    std::vector<TransitionSeq> cycle_up;    // effect >= +1
    std::vector<TransitionSeq> cycle_down;  // effect <= -1
    std::vector<State> base_up;             // -1 when not enabled
    std::vector<State> base_down;

    int count() const { return static_cast<int>(scc_size.size()); }
};

SccAnalysis analyze(const Ocs& o);

// Shortest transition sequence from p to q inside component scc, using only
// positive-guard transitions between states of that component.  Empty when
// p == q.  Its length is below the component size, so every proper prefix has
// effect strictly above -scc_size; it can be fastened at any counter above
// the component size.
TransitionSeq connective(const Ocs& o, const SccAnalysis& analysis, int scc, State p, State q);

}  // namespace ocspath
