#include "ocspath/reach.hpp"

#include <algorithm>
#include <cstdlib>
#include <queue>
#include <string>
#include <tuple>
#include <vector>

namespace ocspath {

namespace {

constexpr std::uint32_t kUnvisited = 0;
constexpr std::uint32_t kRoot = 1;

// Transition ids: positions in t_pos, then t_zero, shifted by 2 so that 0 and
// 1 stay reserved for "unvisited" and "search root" in parent tables.
std::uint32_t id_of(const Ocs& o, const Transition& t) {
    if (t.guard == Guard::pos)
        return static_cast<std::uint32_t>(&t - o.t_pos.data()) + 2;
    return static_cast<std::uint32_t>(o.t_pos.size() + (&t - o.t_zero.data())) + 2;
}

const Transition& by_id(const Ocs& o, std::uint32_t id) {
    std::size_t i = id - 2;
    return i < o.t_pos.size() ? o.t_pos[i] : o.t_zero[i - o.t_pos.size()];
}

void check_config(const Ocs& o, const Config& c, const char* which) {
    if (c.state < 0 || c.state >= o.n)
        throw precondition_error(std::string(which) + " state out of range");
    if (c.counter < 0)
        throw precondition_error(std::string(which) + " counter negative");
}

void check_budget(const Ocs& o, std::int64_t counter_cap) {
    std::uint64_t configs = static_cast<std::uint64_t>(o.n) *
                            (static_cast<std::uint64_t>(counter_cap) + 1);
    if (configs > memory_budget_bits())
        throw resource_error("search space of " + std::to_string(configs) +
                             " configurations exceeds the memory budget; raise "
                             "OCSPATH_MEM_BUDGET to allow it");
}

Path rebuild(const Ocs& o, const std::vector<std::uint32_t>& parent, std::int64_t width,
             const Config& alpha, const Config& beta) {
    std::vector<std::pair<Config, Transition>> steps;
    Config cur = beta;
    while (cur != alpha) {
        std::uint32_t code = parent[static_cast<std::size_t>(cur.state) * width + cur.counter];
        const Transition& t = by_id(o, code);
        Config pred{t.src, cur.counter - t.eff};
        steps.emplace_back(pred, t);
        cur = pred;
    }
    std::reverse(steps.begin(), steps.end());
    return Path{std::move(steps), beta};
}

}  // namespace

std::uint64_t memory_budget_bits() {
    const char* env = std::getenv("OCSPATH_MEM_BUDGET");
    if (env == nullptr || *env == '\0') return 1ULL << 30;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == nullptr || *end != '\0' || v == 0)
        throw precondition_error("OCSPATH_MEM_BUDGET must be a positive integer");
    return v;
}

SearchCaps default_caps(const Ocs& o, const Config& alpha, const Config& beta) {
    std::int64_t depth = length_bound(o.n, alpha.counter, beta.counter);
    return SearchCaps{depth, alpha.counter + depth};
}

std::optional<Path> shortest_path(const Ocs& o, const Config& alpha, const Config& beta) {
    SearchCaps caps = default_caps(o, alpha, beta);
    std::optional<Path> rho = shortest_path(o, alpha, beta, caps);
    if (rho)
        internal_check(static_cast<std::int64_t>(rho->length()) <=
                           length_bound(o.n, alpha.counter, beta.counter),
                       "shortest path exceeds its length bound");
    return rho;
}

std::optional<Path> shortest_path(const Ocs& o, const Config& alpha, const Config& beta,
                                  const SearchCaps& caps) {
    check_config(o, alpha, "source");
    check_config(o, beta, "target");
    if (alpha == beta) return Path::empty_at(alpha);
    if (alpha.counter > caps.counter_cap || beta.counter > caps.counter_cap)
        return std::nullopt;
    check_budget(o, caps.counter_cap);

    const std::int64_t width = caps.counter_cap + 1;
    std::vector<std::uint32_t> parent(static_cast<std::size_t>(o.n) * width, kUnvisited);
    auto at = [&](const Config& c) -> std::uint32_t& {
        return parent[static_cast<std::size_t>(c.state) * width + c.counter];
    };

    std::vector<Config> frontier{alpha}, next;
    at(alpha) = kRoot;
    for (std::int64_t depth = 0; depth < caps.depth_cap && !frontier.empty(); ++depth) {
        for (const Config& c : frontier) {
            for (const Transition& t : o.out(c)) {
                Config v{t.dst, c.counter + t.eff};
                if (v.counter < 0 || v.counter > caps.counter_cap) continue;
                std::uint32_t& slot = at(v);
                if (slot != kUnvisited) continue;
                slot = id_of(o, t);
                if (v == beta) return rebuild(o, parent, width, alpha, beta);
                next.push_back(v);
            }
        }
        frontier.swap(next);
        next.clear();
    }
    return std::nullopt;
}

std::optional<Path> min_zero_path(const Ocs& o, const Config& alpha, const Config& beta) {
    check_config(o, alpha, "source");
    check_config(o, beta, "target");
    if (alpha.counter != 0 || beta.counter != 0)
        throw precondition_error("min_zero_path requires endpoints at counter zero");
    if (alpha == beta) return Path::empty_at(alpha);

    const std::int64_t cap = zero_zero_length_bound(o.n);
    check_budget(o, cap);
    const std::int64_t width = cap + 1;
    const std::size_t slots = static_cast<std::size_t>(o.n) * width;
    constexpr std::int64_t kInf = -1;
    std::vector<std::int64_t> dist_z(slots, kInf), dist_len(slots, 0);
    std::vector<std::uint32_t> parent(slots, kUnvisited);
    auto idx = [&](const Config& c) {
        return static_cast<std::size_t>(c.state) * width + c.counter;
    };

    using Entry = std::tuple<std::int64_t, std::int64_t, std::int64_t>;  // zeros, len, slot
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
    dist_z[idx(alpha)] = 1;  // counts every zero-counter configuration, endpoints included
    parent[idx(alpha)] = kRoot;
    pq.emplace(1, 0, static_cast<std::int64_t>(idx(alpha)));

    while (!pq.empty()) {
        auto [z, len, slot] = pq.top();
        pq.pop();
        if (dist_z[slot] != z || dist_len[slot] != len) continue;  // stale entry
        Config c{static_cast<State>(slot / width), slot % width};
        if (c == beta) {
            Path rho = rebuild(o, parent, width, alpha, beta);
            internal_check(static_cast<std::int64_t>(rho.length()) <= cap,
                           "minimal-zero path exceeds the zero-to-zero length bound");
            return rho;
        }
        for (const Transition& t : o.out(c)) {
            Config v{t.dst, c.counter + t.eff};
            if (v.counter < 0 || v.counter > cap) continue;
            std::int64_t nz = z + (v.counter == 0 ? 1 : 0);
            std::int64_t nlen = len + 1;
            std::size_t vi = idx(v);
            if (dist_z[vi] != kInf &&
                std::pair{dist_z[vi], dist_len[vi]} <= std::pair{nz, nlen})
                continue;
            dist_z[vi] = nz;
            dist_len[vi] = nlen;
            parent[vi] = id_of(o, t);
            pq.emplace(nz, nlen, static_cast<std::int64_t>(vi));
        }
    }
    return std::nullopt;
}

std::optional<Path> shortest_low_arc(const Ocs& o, const Config& alpha, const Config& beta) {
    check_config(o, alpha, "source");
    check_config(o, beta, "target");
    if (alpha.counter != 0 || beta.counter != 0)
        throw precondition_error("shortest_low_arc requires endpoints at counter zero");
    if (alpha == beta) return Path::empty_at(alpha);

    const std::int64_t top = low_counter_threshold(o.n) - 1;  // highest interior counter
    check_budget(o, top);
    const std::int64_t width = top + 1;
    std::vector<std::uint32_t> parent(static_cast<std::size_t>(o.n) * width, kUnvisited);
    auto at = [&](const Config& c) -> std::uint32_t& {
        return parent[static_cast<std::size_t>(c.state) * width + c.counter];
    };

    std::vector<Config> frontier, next;
    for (const Transition& t : o.out_zero(alpha.state)) {
        if (t.eff == 0) {
            if (t.dst == beta.state) return fasten(alpha, {t});  // length-1 arc
            continue;
        }
        Config v{t.dst, 1};
        if (at(v) != kUnvisited) continue;
        at(v) = id_of(o, t);
        frontier.push_back(v);
    }

    auto rebuild_interior = [&](const Config& from) {
        std::vector<std::pair<Config, Transition>> steps;
        Config cur = from;
        while (cur != alpha) {
            const Transition& t = by_id(o, at(cur));
            Config pred{t.src, cur.counter - t.eff};
            steps.emplace_back(pred, t);
            cur = pred;
        }
        std::reverse(steps.begin(), steps.end());
        return Path{std::move(steps), from};
    };

    while (!frontier.empty()) {
        // Exits from this level come before anything discovered later.
        for (const Config& c : frontier) {
            if (c.counter != 1) continue;
            for (const Transition& t : o.out_pos(c.state)) {
                if (t.eff != -1 || t.dst != beta.state) continue;
                Path rho = rebuild_interior(c);
                rho.steps.emplace_back(c, t);
                rho.target = beta;
                return rho;
            }
        }
        for (const Config& c : frontier) {
            for (const Transition& t : o.out_pos(c.state)) {
                Config v{t.dst, c.counter + t.eff};
                if (v.counter < 1 || v.counter > top) continue;
                std::uint32_t& slot = at(v);
                if (slot != kUnvisited) continue;
                slot = id_of(o, t);
                next.push_back(v);
            }
        }
        frontier.swap(next);
        next.clear();
    }
    return std::nullopt;
}

Ocs build_lifted(const Ocs& o, std::int64_t level) {
    if (level < 0) throw precondition_error("lift level must be nonnegative");
    if (level == 0) return o;
    check_budget(o, level - 1);

    std::vector<Transition> zt;
    std::vector<std::int32_t> mark(static_cast<std::size_t>(o.n) * level, -1);
    std::vector<char> arrival(o.n, 0);
    std::vector<Config> frontier, next;

    for (State q = 0; q < o.n; ++q) {
        frontier.clear();
        next.clear();
        std::fill(arrival.begin(), arrival.end(), 0);
        for (const Transition& t : o.out_pos(q)) {
            if (t.eff == 0 || t.eff == 1) {
                // A step staying at or climbing from the level survives as a
                // zero test of the lifted system.
                zt.push_back({q, t.eff, t.dst, Guard::zero});
                continue;
            }
            Config v{t.dst, level - 1};
            std::size_t vi = static_cast<std::size_t>(v.state) * level + v.counter;
            if (mark[vi] == q) continue;
            mark[vi] = q;
            frontier.push_back(v);
        }
        // Excursion below the level: explore counters 0..level-1; climbing
        // back to the level ends the excursion and synthesizes a zero test.
        while (!frontier.empty()) {
            for (const Config& c : frontier) {
                for (const Transition& t : o.out(c)) {
                    std::int64_t nc = c.counter + t.eff;
                    if (nc < 0) continue;
                    if (nc == level) {
                        arrival[t.dst] = 1;
                        continue;
                    }
                    std::size_t vi = static_cast<std::size_t>(t.dst) * level + nc;
                    if (mark[vi] == q) continue;
                    mark[vi] = q;
                    next.push_back({t.dst, nc});
                }
            }
            frontier.swap(next);
            next.clear();
        }
        for (State d = 0; d < o.n; ++d)
            if (arrival[d]) zt.push_back({q, 0, d, Guard::zero});
    }
    return Ocs::make(o.n, o.t_pos, std::move(zt), o.names);
}

}  // namespace ocspath
