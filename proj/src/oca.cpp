#include "ocspath/oca.hpp"

#include <algorithm>
#include <deque>

#include "ocspath/reach.hpp"

namespace ocspath {

namespace {

std::vector<State> canonical_states(int n, std::vector<State> states, const char* what) {
    for (State s : states)
        if (s < 0 || s >= n)
            throw precondition_error(std::string(what) + " state out of range");
    std::sort(states.begin(), states.end());
    states.erase(std::unique(states.begin(), states.end()), states.end());
    return states;
}

}  // namespace

Oca Oca::make(int n, std::vector<LabeledTransition> transitions,
              std::vector<std::string> alphabet, std::vector<State> initial,
              std::vector<State> finals, std::vector<std::string> names) {
    for (const LabeledTransition& lt : transitions)
        if (lt.label < -1 || lt.label >= static_cast<std::int32_t>(alphabet.size()))
            throw precondition_error("transition label out of range");

    std::sort(transitions.begin(), transitions.end(),
              [](const LabeledTransition& a, const LabeledTransition& b) { return a.t < b.t; });
    std::vector<LabeledTransition> unique_ts;
    for (const LabeledTransition& lt : transitions) {
        if (!unique_ts.empty() && unique_ts.back().t == lt.t) {
            if (unique_ts.back().label != lt.label)
                throw precondition_error("duplicate transition with conflicting labels");
            continue;
        }
        unique_ts.push_back(lt);
    }

    std::vector<Transition> pos, zero;
    std::vector<std::int32_t> label_pos, label_zero;
    for (const LabeledTransition& lt : unique_ts) {
        if (lt.t.guard == Guard::pos) {
            pos.push_back(lt.t);
            label_pos.push_back(lt.label);
        } else if (lt.t.guard == Guard::zero) {
            zero.push_back(lt.t);
            label_zero.push_back(lt.label);
        } else {
            throw precondition_error("automata do not take negative-guard transitions");
        }
    }

    Oca a;
    // The inputs are already sorted and unique per guard, so the canonical
    // order inside Ocs::make matches the label vectors.
    a.ocs = Ocs::make(n, std::move(pos), std::move(zero), std::move(names));
    a.alphabet = std::move(alphabet);
    a.label_pos = std::move(label_pos);
    a.label_zero = std::move(label_zero);
    a.initial_states = canonical_states(n, std::move(initial), "initial");
    a.final_states = canonical_states(n, std::move(finals), "final");
    if (a.initial_states.empty()) throw precondition_error("automaton needs an initial state");
    return a;
}

std::int32_t Oca::label_of(const Transition& t) const {
    const auto& set = t.guard == Guard::zero ? ocs.t_zero : ocs.t_pos;
    const auto& labels = t.guard == Guard::zero ? label_zero : label_pos;
    auto it = std::lower_bound(set.begin(), set.end(), t);
    if (it == set.end() || *it != t) throw precondition_error("transition not in the automaton");
    return labels[it - set.begin()];
}

std::optional<std::vector<std::string>> shortest_word(const Oca& a) {
    const Ocs& o = a.ocs;
    const std::int64_t cap = zero_zero_length_bound(o.n);  // counters and word length
    {
        std::uint64_t configs = static_cast<std::uint64_t>(o.n) * (cap + 1);
        if (configs > memory_budget_bits())
            throw resource_error("search space exceeds the memory budget; raise "
                                 "OCSPATH_MEM_BUDGET to allow it");
    }
    const std::int64_t width = cap + 1;
    const std::size_t slots = static_cast<std::size_t>(o.n) * width;
    constexpr std::int64_t kInf = -1;
    std::vector<std::int64_t> dist(slots, kInf);
    std::vector<std::uint32_t> parent(slots, 0);
    auto idx = [&](const Config& c) {
        return static_cast<std::size_t>(c.state) * width + c.counter;
    };
    auto label_by_span = [&](const Config& c, const Transition& t) -> std::int32_t {
        if (c.counter == 0) return a.label_zero[&t - o.t_zero.data()];
        return a.label_pos[&t - o.t_pos.data()];
    };
    auto id_of = [&](const Transition& t) -> std::uint32_t {
        if (t.guard == Guard::pos)
            return static_cast<std::uint32_t>(&t - o.t_pos.data()) + 2;
        return static_cast<std::uint32_t>(o.t_pos.size() + (&t - o.t_zero.data())) + 2;
    };
    auto by_id = [&](std::uint32_t id) -> const Transition& {
        std::size_t i = id - 2;
        return i < o.t_pos.size() ? o.t_pos[i] : o.t_zero[i - o.t_pos.size()];
    };

    // Letters cost one, epsilon steps cost nothing: deque-based 0/1 search.
    std::deque<std::pair<Config, std::int64_t>> queue;
    for (State s : a.initial_states) {
        Config c{s, 0};
        dist[idx(c)] = 0;
        parent[idx(c)] = 1;
        queue.emplace_back(c, 0);
    }

    while (!queue.empty()) {
        auto [c, d] = queue.front();
        queue.pop_front();
        if (dist[idx(c)] != d) continue;  // stale entry
        if (std::binary_search(a.final_states.begin(), a.final_states.end(), c.state)) {
            std::vector<std::string> word;
            Config cur = c;
            while (parent[idx(cur)] != 1) {
                const Transition& t = by_id(parent[idx(cur)]);
                Config pred{t.src, cur.counter - t.eff};
                std::int32_t label = label_by_span(pred, t);
                if (label >= 0) word.push_back(a.alphabet[label]);
                cur = pred;
            }
            std::reverse(word.begin(), word.end());
            internal_check(static_cast<std::int64_t>(word.size()) <= cap,
                           "accepted word exceeds the word length bound");
            return word;
        }
        for (const Transition& t : o.out(c)) {
            Config v{t.dst, c.counter + t.eff};
            if (v.counter < 0 || v.counter > cap) continue;
            std::int64_t cost = label_by_span(c, t) >= 0 ? 1 : 0;
            std::int64_t nd = d + cost;
            if (nd > cap) continue;
            std::size_t vi = idx(v);
            if (dist[vi] != kInf && dist[vi] <= nd) continue;
            dist[vi] = nd;
            parent[vi] = id_of(t);
            if (cost == 0)
                queue.emplace_front(v, nd);
            else
                queue.emplace_back(v, nd);
        }
    }
    return std::nullopt;
}

}  // namespace ocspath
