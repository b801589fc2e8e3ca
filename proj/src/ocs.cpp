#include "ocspath/ocs.hpp"

#include <algorithm>
#include <unordered_map>

namespace ocspath {

std::string_view guard_name(Guard g) {
    switch (g) {
        case Guard::pos: return "pos";
        case Guard::zero: return "zero";
        case Guard::neg: return "neg";
    }
    return "?";
}

namespace {

void check_transitions(int n, const std::vector<Transition>& ts, Guard expected,
                       std::int32_t min_eff) {
    for (const Transition& t : ts) {
        if (t.src < 0 || t.src >= n || t.dst < 0 || t.dst >= n)
            throw precondition_error("transition references a state outside 0..n-1");
        if (t.eff < min_eff || t.eff > 1)
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

std::vector<std::string> default_names(int n, std::vector<std::string> names) {
    if (names.empty()) {
        names.reserve(n);
        for (int q = 0; q < n; ++q) names.push_back("s" + std::to_string(q));
    }
    if (static_cast<int>(names.size()) != n)
        throw precondition_error("name list size does not match state count");
    return names;
}

}  // namespace

Ocs Ocs::make(int n, std::vector<Transition> pos, std::vector<Transition> zero,
              std::vector<std::string> names) {
    if (n <= 0) throw precondition_error("state count must be positive");
    check_transitions(n, pos, Guard::pos, -1);
    check_transitions(n, zero, Guard::zero, 0);
    Ocs o;
    o.n = n;
    o.names = default_names(n, std::move(names));
    o.t_pos = canonicalize(std::move(pos));
    o.t_zero = canonicalize(std::move(zero));
    o.pos_off_ = offsets(n, o.t_pos);
    o.zero_off_ = offsets(n, o.t_zero);
    return o;
}

std::span<const Transition> Ocs::out_pos(State q) const {
    return {t_pos.data() + pos_off_[q], t_pos.data() + pos_off_[q + 1]};
}

std::span<const Transition> Ocs::out_zero(State q) const {
    return {t_zero.data() + zero_off_[q], t_zero.data() + zero_off_[q + 1]};
}

std::span<const Transition> Ocs::out(const Config& c) const {
    return c.counter == 0 ? out_zero(c.state) : out_pos(c.state);
}

std::optional<State> Ocs::state_by_name(std::string_view name) const {
    for (State q = 0; q < n; ++q)
        if (names[q] == name) return q;
    return std::nullopt;
}

std::int64_t effect(const TransitionSeq& sigma) {
    std::int64_t e = 0;
    for (const Transition& t : sigma) e += t.eff;
    return e;
}

bool consistent(const TransitionSeq& sigma) {
    for (std::size_t i = 0; i + 1 < sigma.size(); ++i)
        if (sigma[i].dst != sigma[i + 1].src) return false;
    return true;
}

std::vector<Config> path_configs(const Path& rho) {
    std::vector<Config> cs;
    cs.reserve(rho.steps.size() + 1);
    for (const auto& [c, t] : rho.steps) cs.push_back(c);
    cs.push_back(rho.target);
    return cs;
}

TransitionSeq proj(const Path& rho) {
    TransitionSeq sigma;
    sigma.reserve(rho.steps.size());
    for (const auto& [c, t] : rho.steps) sigma.push_back(t);
    return sigma;
}

std::int64_t intermediate_zeros(const Path& rho) {
    std::int64_t z = 0;
    for (std::size_t i = 1; i < rho.steps.size(); ++i)
        if (rho.steps[i].first.counter == 0) ++z;
    return z;
}

std::int64_t max_counter(const Path& rho) {
    std::int64_t m = rho.target.counter;
    for (const auto& [c, t] : rho.steps) m = std::max(m, c.counter);
    return m;
}

std::optional<Config> fire(const Config& gamma, const Transition& t) {
    if (t.src != gamma.state) return std::nullopt;
    if (gamma.counter == 0 && t.guard != Guard::zero) return std::nullopt;
    if (gamma.counter > 0 && t.guard != Guard::pos) return std::nullopt;
    if (gamma.counter < 0) return std::nullopt;
    Config next{t.dst, gamma.counter + t.eff};
    if (next.counter < 0) return std::nullopt;
    return next;
}

Path fasten(const Config& gamma, const TransitionSeq& sigma) {
    Path rho;
    rho.steps.reserve(sigma.size());
    Config cur = gamma;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        std::optional<Config> next = fire(cur, sigma[i]);
        if (!next)
            throw not_fireable_error(i, "sequence not fireable at step " + std::to_string(i));
        rho.steps.emplace_back(cur, sigma[i]);
        cur = *next;
    }
    rho.target = cur;
    return rho;
}

Path concat(const Path& a, const Path& b) {
    if (a.target != b.source())
        throw precondition_error("paths do not chain: target of one differs from source of next");
    Path joined = a;
    joined.steps.insert(joined.steps.end(), b.steps.begin(), b.steps.end());
    joined.target = b.target;
    return joined;
}

Path concat(std::span<const Path> pieces) {
    if (pieces.empty()) throw precondition_error("cannot concatenate zero paths");
    Path joined = pieces.front();
    for (std::size_t i = 1; i < pieces.size(); ++i) joined = concat(joined, pieces[i]);
    return joined;
}

std::optional<PathViolation> validate_path(const Path& rho) {
    Config cur = rho.source();
    for (std::size_t i = 0; i < rho.steps.size(); ++i) {
        const auto& [c, t] = rho.steps[i];
        if (c != cur) return PathViolation{i, "step configuration does not chain"};
        std::optional<Config> next = fire(c, t);
        if (!next) return PathViolation{i, "transition not fireable at its configuration"};
        cur = *next;
    }
    if (cur != rho.target) return PathViolation{rho.steps.size(), "target does not chain"};
    if (rho.target.counter < 0)
        return PathViolation{rho.steps.size(), "target counter negative"};
    return std::nullopt;
}

std::optional<PathViolation> validate_path_in(const Ocs& o, const Path& rho) {
    if (auto v = validate_path(rho)) return v;
    for (std::size_t i = 0; i < rho.steps.size(); ++i) {
        const Transition& t = rho.steps[i].second;
        const auto& set = t.guard == Guard::zero ? o.t_zero : o.t_pos;
        if (t.guard == Guard::neg ||
            !std::binary_search(set.begin(), set.end(), t))
            return PathViolation{i, "transition not in the system"};
        if (rho.steps[i].first.state >= o.n || rho.steps[i].first.state < 0)
            return PathViolation{i, "state outside the system"};
    }
    if (rho.target.state >= o.n || rho.target.state < 0)
        return PathViolation{rho.steps.size(), "state outside the system"};
    return std::nullopt;
}

Path remove_repeats(const Path& rho) {
    // One left-to-right sweep that jumps from each configuration to its last
    // occurrence implements the excise-earliest-repeat-to-fixpoint rule:
    // skipped segments lie left of the cursor, so later occurrences of the
    // current configuration are all still present.
    std::vector<Config> cs = path_configs(rho);
    std::unordered_map<Config, std::size_t, ConfigHash> last;
    last.reserve(cs.size() * 2);
    for (std::size_t i = 0; i < cs.size(); ++i) last[cs[i]] = i;

    Path out;
    out.steps.reserve(rho.steps.size());
    std::size_t i = 0;
    while (i < cs.size()) {
        std::size_t j = last[cs[i]];
        if (j + 1 == cs.size()) break;  // reached the target configuration
        out.steps.push_back(rho.steps[j]);
        i = j + 1;
    }
    out.target = rho.target;
    return out;
}

std::vector<Path> split_arcs(const Path& rho) {
    if (rho.source().counter != 0 || rho.target.counter != 0)
        throw precondition_error("split_arcs requires endpoints at counter zero");
    std::vector<Path> arcs;
    if (rho.steps.empty()) return arcs;
    std::vector<Config> cs = path_configs(rho);
    std::size_t begin = 0;
    for (std::size_t i = 1; i < cs.size(); ++i) {
        if (cs[i].counter != 0) continue;
        Path piece;
        piece.steps.assign(rho.steps.begin() + begin, rho.steps.begin() + i);
        piece.target = cs[i];
        arcs.push_back(std::move(piece));
        begin = i;
    }
    return arcs;
}

}  // namespace ocspath
