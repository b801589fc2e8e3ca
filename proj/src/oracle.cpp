#include "ocspath/oracle.hpp"

#include <map>
#include <queue>
#include <utility>

namespace ocspath {

// Plain breadth-first search over an ordered map.  No shared machinery with
// the production solvers on purpose: this is the measuring stick.
std::optional<std::int64_t> oracle_shortest_path(const Ocs& o, const Config& alpha,
                                                 const Config& beta, std::int64_t depth_cap,
                                                 std::int64_t counter_cap) {
    if (alpha == beta) return 0;
    std::map<std::pair<State, std::int64_t>, std::int64_t> dist;
    std::queue<Config> queue;
    dist[{alpha.state, alpha.counter}] = 0;
    queue.push(alpha);
    while (!queue.empty()) {
        Config c = queue.front();
        queue.pop();
        std::int64_t d = dist[{c.state, c.counter}];
        if (d >= depth_cap) continue;
        for (const Transition& t : (c.counter == 0 ? o.out_zero(c.state) : o.out_pos(c.state))) {
            Config v{t.dst, c.counter + t.eff};
            if (v.counter < 0 || v.counter > counter_cap) continue;
            if (dist.count({v.state, v.counter})) continue;
            dist[{v.state, v.counter}] = d + 1;
            if (v == beta) return d + 1;
            queue.push(v);
        }
    }
    return std::nullopt;
}

// Uniform-cost search on the pair (zero visits, steps), compared
// lexicographically.  Zero visits count every configuration at counter zero
// including both endpoints; the intermediate count reported subtracts them.
std::optional<OracleZeroCost> oracle_min_zero(const Ocs& o, const Config& alpha,
                                              const Config& beta, std::int64_t depth_cap,
                                              std::int64_t counter_cap) {
    if (alpha.counter != 0 || beta.counter != 0) return std::nullopt;
    if (alpha == beta) return OracleZeroCost{0, 0};
    using Key = std::pair<State, std::int64_t>;
    using Cost = std::pair<std::int64_t, std::int64_t>;
    std::map<Key, Cost> best;
    using Item = std::pair<Cost, Key>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    best[{alpha.state, 0}] = {1, 0};
    pq.push({{1, 0}, {alpha.state, 0}});
    while (!pq.empty()) {
        auto [cost, key] = pq.top();
        pq.pop();
        if (best[key] != cost) continue;
        if (key.first == beta.state && key.second == 0)
            return OracleZeroCost{cost.first - 2, cost.second};
        if (cost.second >= depth_cap) continue;
        Config c{key.first, key.second};
        for (const Transition& t : (c.counter == 0 ? o.out_zero(c.state) : o.out_pos(c.state))) {
            Config v{t.dst, c.counter + t.eff};
            if (v.counter < 0 || v.counter > counter_cap) continue;
            Cost nc{cost.first + (v.counter == 0 ? 1 : 0), cost.second + 1};
            Key vk{v.state, v.counter};
            auto it = best.find(vk);
            if (it != best.end() && it->second <= nc) continue;
            best[vk] = nc;
            pq.push({nc, vk});
        }
    }
    return std::nullopt;
}

}  // namespace ocspath
