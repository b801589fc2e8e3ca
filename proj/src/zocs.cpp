#include "ocspath/zocs.hpp"

#include <algorithm>

#include "ocspath/reach.hpp"

namespace ocspath {

namespace {

void check_z_transitions(int n, const std::vector<Transition>& ts, Guard expected) {
    for (const Transition& t : ts) {
        if (t.src < 0 || t.src >= n || t.dst < 0 || t.dst >= n)
            throw precondition_error("transition references a state outside 0..n-1");
        if (t.eff < -1 || t.eff > 1)
            throw precondition_error("transition effect out of range");
        if (t.guard != expected)
            throw precondition_error("transition guard does not match its set");
    }
}

std::vector<Transition> canonicalize(std::vector<Transition> ts) {
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    return ts;
}

std::vector<std::uint32_t> offsets(int n, const std::vector<Transition>& ts) {
    std::vector<std::uint32_t> off(static_cast<std::size_t>(n) + 1, 0);
    for (const Transition& t : ts) ++off[static_cast<std::size_t>(t.src) + 1];
    for (int q = 0; q < n; ++q) off[q + 1] += off[q];
    return off;
}

std::vector<Transition> flip_set(const std::vector<Transition>& ts, Guard new_guard) {
    std::vector<Transition> out;
    out.reserve(ts.size());
    for (const Transition& t : ts) out.push_back({t.src, -t.eff, t.dst, new_guard});
    return out;
}

// States q' connected from (q,0) by an arc of length >= 1 (interior counters
// strictly positive), within the given counter cap.
std::vector<char> arc_targets(const Ocs& o, State q, std::int64_t counter_cap) {
    std::vector<char> hit(o.n, 0);
    std::vector<char> seen(static_cast<std::size_t>(o.n) * (counter_cap + 1), 0);
    std::vector<Config> frontier, next;
    for (const Transition& t : o.out_zero(q)) {
        if (t.eff == 0) {
            hit[t.dst] = 1;
            continue;
        }
        std::size_t vi = static_cast<std::size_t>(t.dst) * (counter_cap + 1) + 1;
        if (seen[vi]) continue;
        seen[vi] = 1;
        frontier.push_back({t.dst, 1});
    }
    while (!frontier.empty()) {
        for (const Config& c : frontier) {
            for (const Transition& t : o.out_pos(c.state)) {
                std::int64_t nc = c.counter + t.eff;
                if (nc == 0) {
                    hit[t.dst] = 1;
                    continue;
                }
                if (nc > counter_cap) continue;
                std::size_t vi = static_cast<std::size_t>(t.dst) * (counter_cap + 1) + nc;
                if (seen[vi]) continue;
                seen[vi] = 1;
                next.push_back({t.dst, nc});
            }
        }
        frontier.swap(next);
        next.clear();
    }
    return hit;
}

}  // namespace

ZOcs ZOcs::make(int n, std::vector<Transition> pos, std::vector<Transition> neg,
                std::vector<Transition> zero, std::vector<std::string> names) {
    if (n <= 0) throw precondition_error("state count must be positive");
    check_z_transitions(n, pos, Guard::pos);
    check_z_transitions(n, neg, Guard::neg);
    check_z_transitions(n, zero, Guard::zero);
    ZOcs z;
    z.n = n;
    if (names.empty())
        for (int q = 0; q < n; ++q) names.push_back("s" + std::to_string(q));
    if (static_cast<int>(names.size()) != n)
        throw precondition_error("name list size does not match state count");
    z.names = std::move(names);
    z.t_pos = canonicalize(std::move(pos));
    z.t_neg = canonicalize(std::move(neg));
    z.t_zero = canonicalize(std::move(zero));
    z.pos_off_ = offsets(n, z.t_pos);
    z.neg_off_ = offsets(n, z.t_neg);
    z.zero_off_ = offsets(n, z.t_zero);
    return z;
}

std::span<const Transition> ZOcs::out(const Config& c) const {
    const std::vector<Transition>* set = &t_zero;
    const std::vector<std::uint32_t>* off = &zero_off_;
    if (c.counter > 0) {
        set = &t_pos;
        off = &pos_off_;
    } else if (c.counter < 0) {
        set = &t_neg;
        off = &neg_off_;
    }
    return {set->data() + (*off)[c.state], set->data() + (*off)[c.state + 1]};
}

std::optional<State> ZOcs::state_by_name(std::string_view name) const {
    for (State q = 0; q < n; ++q)
        if (names[q] == name) return q;
    return std::nullopt;
}

ZOcs negate(const ZOcs& z) {
    return ZOcs::make(z.n, flip_set(z.t_neg, Guard::pos), flip_set(z.t_pos, Guard::neg),
                      flip_set(z.t_zero, Guard::zero), z.names);
}

Path z_negate_path(const Path& rho) {
    auto flip_guard = [](Guard g) {
        return g == Guard::pos ? Guard::neg : g == Guard::neg ? Guard::pos : Guard::zero;
    };
    Path out;
    out.steps.reserve(rho.steps.size());
    for (const auto& [c, t] : rho.steps)
        out.steps.emplace_back(Config{c.state, -c.counter},
                               Transition{t.src, -t.eff, t.dst, flip_guard(t.guard)});
    out.target = {rho.target.state, -rho.target.counter};
    return out;
}

Ocs signed_projection(const ZOcs& z, Sign side) {
    const ZOcs& base = side == Sign::plus ? z : negate(z);
    std::vector<Transition> zero;
    for (const Transition& t : base.t_zero)
        if (t.eff >= 0) zero.push_back(t);
    return Ocs::make(base.n, base.t_pos, std::move(zero), base.names);
}

Ocs augmented(const ZOcs& z, Sign side) {
    const ZOcs base = side == Sign::plus ? z : negate(z);
    Ocs same_side = signed_projection(base, Sign::plus);
    Ocs other_side = signed_projection(base, Sign::minus);

    // A dip through the opposite side returns to counter zero, so viewed from
    // this side it is a zero test.  Any dip admits a witness within the
    // zero-to-zero length bound, which also caps its counters.
    std::vector<Transition> zero = same_side.t_zero;
    const std::int64_t cap = zero_zero_length_bound(z.n);
    for (State q = 0; q < z.n; ++q) {
        std::vector<char> hit = arc_targets(other_side, q, cap);
        for (State d = 0; d < z.n; ++d)
            if (hit[d]) zero.push_back({q, 0, d, Guard::zero});
    }
    return Ocs::make(z.n, same_side.t_pos, std::move(zero), z.names);
}

std::optional<Config> z_fire(const Config& gamma, const Transition& t) {
    if (t.src != gamma.state) return std::nullopt;
    Guard needed = gamma.counter > 0   ? Guard::pos
                   : gamma.counter < 0 ? Guard::neg
                                       : Guard::zero;
    if (t.guard != needed) return std::nullopt;
    return Config{t.dst, gamma.counter + t.eff};
}

std::optional<PathViolation> z_validate_path(const ZOcs& z, const Path& rho) {
    Config cur = rho.source();
    for (std::size_t i = 0; i < rho.steps.size(); ++i) {
        const auto& [c, t] = rho.steps[i];
        if (c != cur) return PathViolation{i, "step configuration does not chain"};
        if (c.state < 0 || c.state >= z.n) return PathViolation{i, "state outside the system"};
        std::optional<Config> next = z_fire(c, t);
        if (!next) return PathViolation{i, "transition not fireable at its configuration"};
        const auto& set = t.guard == Guard::pos   ? z.t_pos
                          : t.guard == Guard::neg ? z.t_neg
                                                  : z.t_zero;
        if (!std::binary_search(set.begin(), set.end(), t))
            return PathViolation{i, "transition not in the system"};
        cur = *next;
    }
    if (cur != rho.target) return PathViolation{rho.steps.size(), "target does not chain"};
    return std::nullopt;
}

std::optional<Path> z_shortest_path(const ZOcs& z, const Config& alpha, const Config& beta) {
    if (alpha.state < 0 || alpha.state >= z.n || beta.state < 0 || beta.state >= z.n)
        throw precondition_error("endpoint state out of range");
    if (alpha == beta) return Path::empty_at(alpha);

    const std::int64_t bound = z_length_bound(z.n, alpha.counter, beta.counter);
    if (std::llabs(beta.counter - alpha.counter) > bound) return std::nullopt;
    const std::int64_t width = 2 * bound + 1;
    {
        std::uint64_t configs = static_cast<std::uint64_t>(z.n) * width;
        if (configs > memory_budget_bits())
            throw resource_error("search space of " + std::to_string(configs) +
                                 " configurations exceeds the memory budget; raise "
                                 "OCSPATH_MEM_BUDGET to allow it");
    }

    // Transition ids follow the set order pos, neg, zero, shifted by 2.
    auto id_of = [&](const Transition& t) -> std::uint32_t {
        std::size_t base = t.guard == Guard::pos ? 0
                           : t.guard == Guard::neg
                               ? z.t_pos.size()
                               : z.t_pos.size() + z.t_neg.size();
        const std::vector<Transition>& set = t.guard == Guard::pos   ? z.t_pos
                                             : t.guard == Guard::neg ? z.t_neg
                                                                     : z.t_zero;
        return static_cast<std::uint32_t>(base + (&t - set.data())) + 2;
    };
    auto by_id = [&](std::uint32_t id) -> const Transition& {
        std::size_t i = id - 2;
        if (i < z.t_pos.size()) return z.t_pos[i];
        i -= z.t_pos.size();
        if (i < z.t_neg.size()) return z.t_neg[i];
        return z.t_zero[i - z.t_neg.size()];
    };

    std::vector<std::uint32_t> parent(static_cast<std::size_t>(z.n) * width, 0);
    auto slot = [&](const Config& c) -> std::uint32_t& {
        return parent[static_cast<std::size_t>(c.state) * width +
                      (c.counter - alpha.counter + bound)];
    };
    auto in_range = [&](std::int64_t counter) {
        return counter >= alpha.counter - bound && counter <= alpha.counter + bound;
    };

    std::vector<Config> frontier{alpha}, next;
    slot(alpha) = 1;
    for (std::int64_t depth = 0; depth < bound && !frontier.empty(); ++depth) {
        for (const Config& c : frontier) {
            for (const Transition& t : z.out(c)) {
                Config v{t.dst, c.counter + t.eff};
                if (!in_range(v.counter)) continue;
                std::uint32_t& s = slot(v);
                if (s != 0) continue;
                s = id_of(t);
                if (v == beta) {
                    std::vector<std::pair<Config, Transition>> steps;
                    Config cur = beta;
                    while (cur != alpha) {
                        const Transition& bt = by_id(slot(cur));
                        Config pred{bt.src, cur.counter - bt.eff};
                        steps.emplace_back(pred, bt);
                        cur = pred;
                    }
                    std::reverse(steps.begin(), steps.end());
                    Path rho{std::move(steps), beta};
                    internal_check(static_cast<std::int64_t>(rho.length()) <= bound,
                                   "integer-system path exceeds its length bound");
                    return rho;
                }
                next.push_back(v);
            }
        }
        frontier.swap(next);
        next.clear();
    }
    return std::nullopt;
}

}  // namespace ocspath
