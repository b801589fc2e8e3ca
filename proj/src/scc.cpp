#include "ocspath/scc.hpp"

#include <algorithm>
#include <cstdint>

namespace ocspath {

namespace {

// Iterative Tarjan over the positive-transition multigraph; recursion depth
// would not survive large systems.
std::pair<std::vector<int>, int> tarjan(const Ocs& o) {
    const int n = o.n;
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<char> on_stack(n, 0);
    std::vector<State> stack;
    struct Frame {
        State v;
        std::size_t edge;
    };
    std::vector<Frame> call;
    int next_index = 0;
    int next_comp = 0;

    for (State root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = 1;
        call.push_back({root, 0});
        while (!call.empty()) {
            Frame& f = call.back();
            std::span<const Transition> edges = o.out_pos(f.v);
            if (f.edge < edges.size()) {
                State w = edges[f.edge].dst;
                ++f.edge;
                if (index[w] == -1) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
            } else {
                if (low[f.v] == index[f.v]) {
                    while (true) {
                        State w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        comp[w] = next_comp;
                        if (w == f.v) break;
                    }
                    ++next_comp;
                }
                State child = f.v;
                call.pop_back();
                if (!call.empty())
                    low[call.back().v] = std::min(low[call.back().v], low[child]);
            }
        }
    }
    return {std::move(comp), next_comp};
}

// Simple cycle of positive (or, with flip, negative) total effect within one
// component, found by maximizing walk effects: if a round of relaxations
// still improves after k rounds, the predecessor graph holds a strictly
// improving cycle.  Runs in O(k * edges) per component.
TransitionSeq signed_cycle(const Ocs& o, const std::vector<State>& verts,
                           const std::vector<int>& comp, int scc, bool flip) {
    const int k = static_cast<int>(verts.size());
    struct Edge {
        int u, v;
        std::int64_t w;
        Transition t;
    };
    std::vector<Edge> edges;
    std::vector<int> local(o.n, -1);
    for (int i = 0; i < k; ++i) local[verts[i]] = i;
    for (State q : verts)
        for (const Transition& t : o.out_pos(q))
            if (comp[t.dst] == scc)
                edges.push_back({local[q], local[t.dst],
                                 flip ? -static_cast<std::int64_t>(t.eff) : t.eff, t});

    std::vector<std::int64_t> dist(k, 0);
    std::vector<int> pred(k, -1);
    int last_changed = -1;
    for (int round = 0; round < k; ++round) {
        bool changed = false;
        for (std::size_t e = 0; e < edges.size(); ++e) {
            if (dist[edges[e].u] + edges[e].w > dist[edges[e].v]) {
                dist[edges[e].v] = dist[edges[e].u] + edges[e].w;
                pred[edges[e].v] = static_cast<int>(e);
                changed = true;
                last_changed = edges[e].v;
            }
        }
        if (!changed) return {};  // stabilized within k-1 rounds: no such cycle
    }

    int w = last_changed;
    for (int i = 0; i < k; ++i) w = edges[pred[w]].u;
    std::vector<int> cyc;
    int cur = w;
    do {
        int e = pred[cur];
        cyc.push_back(e);
        cur = edges[e].u;
    } while (cur != w);
    std::reverse(cyc.begin(), cyc.end());

    // Rotate so the cycle starts at its smallest state, for determinism.
    std::size_t best = 0;
    for (std::size_t i = 1; i < cyc.size(); ++i)
        if (edges[cyc[i]].t.src < edges[cyc[best]].t.src) best = i;
    std::rotate(cyc.begin(), cyc.begin() + best, cyc.end());

    TransitionSeq sigma;
    sigma.reserve(cyc.size());
    for (int e : cyc) sigma.push_back(edges[e].t);

    internal_check(consistent(sigma) && sigma.back().dst == sigma.front().src,
                   "extracted cycle not closed");
    internal_check(static_cast<int>(sigma.size()) <= k, "extracted cycle too long");
    std::vector<State> seen;
    for (const Transition& t : sigma) seen.push_back(t.src);
    std::sort(seen.begin(), seen.end());
    internal_check(std::adjacent_find(seen.begin(), seen.end()) == seen.end(),
                   "extracted cycle not simple");
    std::int64_t e = effect(sigma);
    internal_check(flip ? e <= -1 : e >= 1, "extracted cycle has wrong effect sign");
    return sigma;
}

}  // namespace

SccAnalysis analyze(const Ocs& o) {
    auto [comp, count] = tarjan(o);
    SccAnalysis a;
    a.component_of = std::move(comp);
    a.scc_size.assign(count, 0);
    for (State q = 0; q < o.n; ++q) ++a.scc_size[a.component_of[q]];

    std::vector<std::vector<State>> members(count);
    for (State q = 0; q < o.n; ++q) members[a.component_of[q]].push_back(q);

    a.pos_enabled.assign(count, 0);
    a.neg_enabled.assign(count, 0);
    a.cycle_up.assign(count, {});
    a.cycle_down.assign(count, {});
    a.base_up.assign(count, -1);
    a.base_down.assign(count, -1);

    for (int s = 0; s < count; ++s) {
        TransitionSeq up = signed_cycle(o, members[s], a.component_of, s, false);
        if (!up.empty()) {
            a.pos_enabled[s] = 1;
            a.base_up[s] = up.front().src;
            a.cycle_up[s] = std::move(up);
        }
        TransitionSeq down = signed_cycle(o, members[s], a.component_of, s, true);
        if (!down.empty()) {
            a.neg_enabled[s] = 1;
            a.base_down[s] = down.front().src;
            a.cycle_down[s] = std::move(down);
        }
    }
    return a;
}

TransitionSeq connective(const Ocs& o, const SccAnalysis& analysis, int scc, State p, State q) {
    if (scc < 0 || scc >= analysis.count())
        throw precondition_error("no such component");
    if (p < 0 || p >= o.n || q < 0 || q >= o.n || analysis.component_of[p] != scc ||
        analysis.component_of[q] != scc)
        throw precondition_error("connective endpoints must lie in the given component");
    if (p == q) return {};

    std::vector<int> parent(o.n, -1);  // index into t_pos
    std::vector<State> frontier{p}, next;
    parent[p] = -2;
    while (!frontier.empty()) {
        for (State v : frontier) {
            for (const Transition& t : o.out_pos(v)) {
                if (analysis.component_of[t.dst] != scc || parent[t.dst] != -1) continue;
                parent[t.dst] = static_cast<int>(&t - o.t_pos.data());
                if (t.dst == q) {
                    TransitionSeq sigma;
                    State cur = q;
                    while (cur != p) {
                        const Transition& back = o.t_pos[parent[cur]];
                        sigma.push_back(back);
                        cur = back.src;
                    }
                    std::reverse(sigma.begin(), sigma.end());
                    internal_check(static_cast<int>(sigma.size()) < analysis.scc_size[scc],
                                   "connective too long");
                    return sigma;
                }
                next.push_back(t.dst);
            }
        }
        frontier.swap(next);
        next.clear();
    }
    throw internal_error("component not strongly connected");
}

}  // namespace ocspath
