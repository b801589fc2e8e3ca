#include "ocspath/normalize.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "ocspath/reach.hpp"

namespace ocspath {

namespace {

constexpr int kMaxNormalizerStates = 20000;  // keeps all pump arithmetic in int64

TransitionSeq repeat_seq(const TransitionSeq& sigma, std::int64_t times) {
    TransitionSeq out;
    out.reserve(sigma.size() * static_cast<std::size_t>(times));
    for (std::int64_t i = 0; i < times; ++i) out.insert(out.end(), sigma.begin(), sigma.end());
    return out;
}

std::pair<std::int64_t, std::int64_t> bezout(std::int64_t a, std::int64_t b) {
    std::int64_t old_r = a, r = b;
    std::int64_t old_s = 1, s = 0;
    std::int64_t old_t = 0, t = 1;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::int64_t tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    return {old_s, old_t};  // old_s * a + old_t * b == gcd(a, b)
}

std::int64_t pos_mod(std::int64_t v, std::int64_t m) {
    std::int64_t r = v % m;
    return r < 0 ? r + m : r;
}

// (state, prefix effect mod modulus) at every boundary position of sigma.
std::vector<std::pair<State, std::int64_t>> boundary_keys(const TransitionSeq& sigma,
                                                          std::int64_t modulus) {
    std::vector<std::pair<State, std::int64_t>> keys(sigma.size() + 1);
    std::int64_t e = 0;
    for (std::size_t i = 0; i <= sigma.size(); ++i) {
        State st = i < sigma.size() ? sigma[i].src : sigma.back().dst;
        keys[i] = {st, pos_mod(e, modulus)};
        if (i < sigma.size()) e += sigma[i].eff;
    }
    return keys;
}

struct PairHash {
    std::size_t operator()(const std::pair<State, std::int64_t>& p) const {
        return ConfigHash{}(Config{p.first, p.second});
    }
};

bool is_arc(const Path& rho) {
    if (rho.source().counter != 0 || rho.target.counter != 0) return false;
    for (std::size_t i = 1; i < rho.steps.size(); ++i)
        if (rho.steps[i].first.counter <= 0) return false;
    return true;
}

void append_violation(std::vector<std::string>& bad, bool ok, const char* name) {
    if (!ok) bad.push_back(name);
}

void reject_oversized(const Ocs& o) {
    if (o.n > kMaxNormalizerStates)
        throw resource_error("normalizer supports at most " +
                             std::to_string(kMaxNormalizerStates) + " states");
}

}  // namespace

TransitionSeq unpump_mod(const TransitionSeq& sigma, std::int64_t modulus) {
    if (modulus <= 0) throw precondition_error("modulus must be positive");
    if (!consistent(sigma)) throw precondition_error("sequence must chain");
    if (sigma.empty()) return {};

    // Same sweep as remove_repeats, keyed on (state, prefix effect mod
    // modulus): an excised infix has effect divisible by the modulus, so the
    // keys of everything kept after it do not move.
    std::vector<std::pair<State, std::int64_t>> keys = boundary_keys(sigma, modulus);
    std::unordered_map<std::pair<State, std::int64_t>, std::size_t, PairHash> last;
    last.reserve(keys.size() * 2);
    for (std::size_t i = 0; i < keys.size(); ++i) last[keys[i]] = i;

    TransitionSeq out;
    std::size_t i = 0;
    while (i < keys.size()) {
        std::size_t j = last[keys[i]];
        if (j + 1 == keys.size()) break;
        out.push_back(sigma[j]);
        i = j + 1;
    }
    return out;
}

std::pair<std::int64_t, std::int64_t> choose_pump_counts(std::int64_t up_effect,
                                                         std::int64_t down_effect,
                                                         std::int64_t residual,
                                                         std::int64_t target) {
    if (up_effect <= 0 || down_effect <= 0)
        throw precondition_error("cycle effects must be positive");
    if (target < 0) throw precondition_error("target must be nonnegative");
    const std::int64_t g = std::gcd(up_effect, down_effect);
    if (pos_mod(residual, g) != 0)
        throw precondition_error("residual must be divisible by gcd of the effects");
    if (std::llabs(residual) > target + std::max(up_effect, down_effect))
        throw precondition_error("residual out of the supported range");

    const std::int64_t lcm = up_effect / g * down_effect;
    const std::int64_t step_a = down_effect / g;  // adding it to a shifts a*up_effect by lcm
    const std::int64_t step_b = up_effect / g;

    // Bezout solution of a*up - b*down == -residual, shifted to the smallest
    // nonnegative pair (a and b rise and fall together along the lattice).
    auto [u, v] = bezout(up_effect, down_effect);
    std::int64_t t = -residual / g;
    std::int64_t a = u * t;
    std::int64_t b = -v * t;
    std::int64_t shift = a >= 0 ? -(a / step_a) : (step_a - 1 - a) / step_a;
    a += shift * step_a;
    b += shift * step_b;
    if (a * up_effect + residual < 0) {
        std::int64_t deficit = -residual - a * up_effect;
        std::int64_t bump = (deficit + lcm - 1) / lcm;
        a += bump * step_a;
        b += bump * step_b;
    }
    internal_check(a >= 0 && b >= 0 && a * up_effect - b * down_effect == -residual,
                   "pump count base solution wrong");
    internal_check(a * up_effect <= std::llabs(residual) + lcm &&
                       b * down_effect <= std::llabs(residual) + lcm,
                   "pump count base solution not minimal");

    auto lift = [&](std::int64_t have) {
        return have >= target ? std::int64_t{0} : (target - have + lcm - 1) / lcm;
    };
    std::int64_t i = std::max(lift(a * up_effect), lift(b * down_effect));
    a += i * step_a;
    b += i * step_b;

    internal_check(a * up_effect - b * down_effect == -residual, "pump counts drifted");
    internal_check(target <= a * up_effect && a * up_effect <= 2 * target + 2 * lcm,
                   "pump-up product out of range");
    internal_check(target <= b * down_effect && b * down_effect <= 2 * target + 2 * lcm,
                   "pump-down product out of range");
    return {a, b};
}

std::vector<std::string> verify_normal(const Ocs& o, const SccAnalysis& analysis,
                                       const NormalDecomposition& d) {
    std::vector<std::string> bad;

    if (d.pref.target != d.up.source() || d.up.target != d.cap.source() ||
        d.cap.target != d.down.source() || d.down.target != d.suff.source()) {
        bad.push_back("pieces-chain");
        return bad;
    }
    std::vector<Path> pieces{d.pref, d.up, d.cap, d.down, d.suff};
    Path whole = concat(pieces);
    append_violation(bad, !validate_path_in(o, whole).has_value(), "whole-valid");
    append_violation(bad, is_arc(whole), "whole-arc");

    if (d.scc_up < 0 || d.scc_up >= analysis.count() || d.scc_down < 0 ||
        d.scc_down >= analysis.count()) {
        bad.push_back("scc-range");
        return bad;
    }
    append_violation(bad, analysis.pos_enabled[d.scc_up] == 1, "up-scc-enabled");
    append_violation(bad, analysis.neg_enabled[d.scc_down] == 1, "down-scc-enabled");
    if (!analysis.pos_enabled[d.scc_up] || !analysis.neg_enabled[d.scc_down]) return bad;

    const TransitionSeq& cyc_up = analysis.cycle_up[d.scc_up];
    const TransitionSeq& cyc_down = analysis.cycle_down[d.scc_down];
    append_violation(bad,
                     d.up_cycle_effect == effect(cyc_up) && d.up_cycle_effect > 0 &&
                         d.down_cycle_effect == -effect(cyc_down) && d.down_cycle_effect > 0,
                     "cycle-effects");
    append_violation(bad, d.up_repeats >= 0 && d.down_repeats >= 0, "repeat-signs");
    if (d.up_repeats < 0 || d.down_repeats < 0) return bad;

    append_violation(bad, proj(d.up) == repeat_seq(cyc_up, d.up_repeats), "up-projection");
    append_violation(bad, proj(d.down) == repeat_seq(cyc_down, d.down_repeats),
                     "down-projection");

    const std::int64_t g = std::gcd(d.up_cycle_effect, d.down_cycle_effect);
    const std::int64_t lcm = d.up_cycle_effect / g * d.down_cycle_effect;
    append_violation(bad, d.cap_length == static_cast<std::int64_t>(d.cap.length()),
                     "cap-length");
    append_violation(bad, d.up_repeats * d.up_cycle_effect <= 2 * d.cap_length + 2 * lcm,
                     "pump-up-bound");
    append_violation(bad, d.down_repeats * d.down_cycle_effect <= 2 * d.cap_length + 2 * lcm,
                     "pump-down-bound");

    TransitionSeq cap_proj = proj(d.cap);
    std::int64_t residual = effect(proj(d.pref)) + effect(cap_proj) + effect(proj(d.suff));
    append_violation(bad, d.residual_effect == residual && pos_mod(residual, g) == 0,
                     "residual");
    append_violation(bad,
                     d.up_repeats * d.up_cycle_effect -
                             d.down_repeats * d.down_cycle_effect ==
                         -residual,
                     "pump-balance");

    // No cap infix may form a cycle with effect divisible by gcd; over the
    // boundary keys that is exactly pairwise distinctness.
    if (!cap_proj.empty()) {
        std::vector<std::pair<State, std::int64_t>> keys = boundary_keys(cap_proj, g);
        bool clean = true;
        for (std::size_t i = 0; i + 1 < keys.size() && clean; ++i)
            for (std::size_t j = i + 1; j < keys.size(); ++j)
                if (keys[i] == keys[j]) {
                    clean = false;
                    break;
                }
        append_violation(bad, clean, "cap-infix");
    }

    append_violation(bad,
                     d.pref.target.counter > o.n && d.suff.source().counter > o.n,
                     "anchor-counters");

    std::unordered_set<Config, ConfigHash> seen;
    bool distinct = true;
    for (const Config& c : path_configs(d.pref))
        if (!seen.insert(c).second) distinct = false;
    for (const Config& c : path_configs(d.suff))
        if (!seen.insert(c).second) distinct = false;
    append_violation(bad, distinct, "ends-distinct");

    const std::int64_t low = low_counter_threshold(o.n);
    append_violation(bad, max_counter(d.pref) < low && max_counter(d.suff) < low,
                     "ends-low");

    State up_base = analysis.base_up[d.scc_up];
    State down_base = analysis.base_down[d.scc_down];
    append_violation(bad,
                     d.cap.source().state == up_base && d.cap.target.state == down_base,
                     "cap-endpoints");
    return bad;
}

namespace {

struct Anchor {
    std::size_t cut_lo;  // boundary index at the lower counter level
    std::size_t cut_hi;  // boundary index at the higher counter level
    State state;
};

// Scans counter levels 2n..3n and returns the first state seen at two levels;
// the pigeonhole over n+1 levels guarantees a collision.
Anchor find_anchor(std::int64_t n,
                   const std::function<std::pair<std::size_t, State>(std::int64_t)>& pick) {
    std::unordered_map<State, std::size_t> seen;
    for (std::int64_t k = 2 * n; k <= 3 * n; ++k) {
        auto [cut, st] = pick(k);
        auto it = seen.find(st);
        if (it != seen.end()) return {it->second, cut, st};
        seen.emplace(st, cut);
    }
    throw internal_error("level scan found no repeated state");
}

NormalizedArc build_normal_arc(const Ocs& o, const SccAnalysis& analysis, const Path& arc) {
    const std::int64_t n = o.n;
    Path base = remove_repeats(arc);
    std::vector<Config> cs = path_configs(base);
    internal_check(max_counter(base) >= low_counter_threshold(o.n),
                   "arc without a low witness stays below the low threshold");

    // First and last boundary index per counter level; counters move by at
    // most one per step, so every level up to the peak is hit.
    std::map<std::int64_t, std::size_t> first_at, last_at;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        first_at.emplace(cs[i].counter, i);
        last_at[cs[i].counter] = i;
    }

    Anchor up_anchor = find_anchor(n, [&](std::int64_t k) {
        std::size_t i = first_at.at(k);
        return std::pair{i, cs[i].state};
    });
    // On the descent side the higher level's last visit comes first.
    Anchor down_anchor = find_anchor(n, [&](std::int64_t k) {
        std::size_t j = last_at.at(k);
        return std::pair{j, cs[j].state};
    });
    const std::size_t up_cut = up_anchor.cut_lo;
    const std::size_t down_cut = down_anchor.cut_hi;
    internal_check(up_cut < up_anchor.cut_hi && down_cut < down_anchor.cut_lo,
                   "anchor cuts face the wrong way");
    internal_check(up_cut < down_cut, "anchors do not leave a middle segment");

    const int scc_up = analysis.component_of[up_anchor.state];
    const int scc_down = analysis.component_of[down_anchor.state];
    internal_check(analysis.pos_enabled[scc_up] == 1,
                   "climbing component misses its positive cycle");
    internal_check(analysis.neg_enabled[scc_down] == 1,
                   "descending component misses its negative cycle");

    const TransitionSeq& cyc_up = analysis.cycle_up[scc_up];
    const TransitionSeq& cyc_down = analysis.cycle_down[scc_down];
    const std::int64_t eff_up = effect(cyc_up);
    const std::int64_t eff_down = -effect(cyc_down);
    const State up_base = analysis.base_up[scc_up];
    const State down_base = analysis.base_down[scc_down];

    TransitionSeq to_up_base = connective(o, analysis, scc_up, up_anchor.state, up_base);
    TransitionSeq from_up_base = connective(o, analysis, scc_up, up_base, up_anchor.state);
    TransitionSeq to_down_base =
        connective(o, analysis, scc_down, down_anchor.state, down_base);
    TransitionSeq from_down_base =
        connective(o, analysis, scc_down, down_base, down_anchor.state);

    // Prefix of the arc up to the climb anchor, extended to the cycle base.
    Path pref{{base.steps.begin(), base.steps.begin() + up_cut}, cs[up_cut]};
    pref = concat(pref, fasten(cs[up_cut], to_up_base));
    // Suffix from the descent anchor, preceded by a hop from the base.
    Path suff{{base.steps.begin() + down_cut, base.steps.end()}, base.target};
    if (!from_down_base.empty()) {
        Config start{down_base, cs[down_cut].counter - effect(from_down_base)};
        suff = concat(fasten(start, from_down_base), suff);
    }

    // Balance the two anchor counters to within one cycle effect.
    std::int64_t cnt_pref = pref.target.counter;
    std::int64_t cnt_suff = suff.source().counter;
    if (cnt_pref <= cnt_suff - eff_up) {
        std::int64_t copies = (cnt_suff - cnt_pref) / eff_up;
        pref = concat(pref, fasten(pref.target, repeat_seq(cyc_up, copies)));
    } else if (cnt_pref >= cnt_suff + eff_down) {
        std::int64_t copies = (cnt_pref - cnt_suff) / eff_down;
        Config start{down_base, cnt_suff + copies * eff_down};
        suff = concat(fasten(start, repeat_seq(cyc_down, copies)), suff);
    }
    pref = remove_repeats(pref);
    suff = remove_repeats(suff);

    const Config anchor_up = pref.target;
    const Config anchor_down = suff.source();
    internal_check(anchor_up.state == up_base && anchor_down.state == down_base,
                   "pump anchors lost their base states");
    internal_check(anchor_up.counter > n && anchor_down.counter > n,
                   "pump anchors dipped into the low band");
    internal_check(std::llabs(anchor_up.counter - anchor_down.counter) <
                       std::max(eff_up, eff_down),
                   "anchor counters not balanced");

    // Cap skeleton: gcd-many base->anchor->base round trips drive every
    // connective contribution to zero modulo gcd, around the middle of the
    // arc between the two anchors.
    const std::int64_t g = std::gcd(eff_up, eff_down);
    TransitionSeq skeleton;
    auto append = [&skeleton](const TransitionSeq& s) {
        skeleton.insert(skeleton.end(), s.begin(), s.end());
    };
    append(from_up_base);
    for (std::int64_t i = 1; i < g; ++i) {
        append(to_up_base);
        append(from_up_base);
    }
    for (std::size_t i = up_cut; i < down_cut; ++i) skeleton.push_back(base.steps[i].second);
    for (std::int64_t i = 1; i < g; ++i) {
        append(to_down_base);
        append(from_down_base);
    }
    append(to_down_base);
    internal_check(consistent(skeleton), "cap skeleton does not chain");

    TransitionSeq cap_seq = unpump_mod(skeleton, g);
    const std::int64_t cap_len = static_cast<std::int64_t>(cap_seq.size());
    internal_check(cap_len <= g * n, "cap longer than gcd times the state count");

    const std::int64_t residual =
        anchor_up.counter + effect(cap_seq) - anchor_down.counter;
    internal_check(pos_mod(residual, g) == 0, "residual escapes the gcd lattice");
    internal_check(std::llabs(residual) <= cap_len + std::max(eff_up, eff_down),
                   "residual out of range for pump selection");
    auto [a, b] = choose_pump_counts(eff_up, eff_down, residual, cap_len);

    Path up = fasten(anchor_up, repeat_seq(cyc_up, a));
    Path cap = fasten(up.target, cap_seq);
    Path down = fasten(cap.target, repeat_seq(cyc_down, b));
    internal_check(down.target == anchor_down, "pumped pieces miss the descent anchor");

    NormalDecomposition d;
    d.pref = std::move(pref);
    d.up = std::move(up);
    d.cap = std::move(cap);
    d.down = std::move(down);
    d.suff = std::move(suff);
    d.scc_up = scc_up;
    d.scc_down = scc_down;
    d.up_cycle_effect = eff_up;
    d.down_cycle_effect = eff_down;
    d.up_repeats = a;
    d.down_repeats = b;
    d.residual_effect = residual;
    d.cap_length = cap_len;

    std::vector<std::string> violations = verify_normal(o, analysis, d);
    if (!violations.empty()) {
        std::string what = "normal arc fails its own audit:";
        for (const std::string& v : violations) what += " " + v;
        throw internal_error(what);
    }

    std::vector<Path> pieces{d.pref, d.up, d.cap, d.down, d.suff};
    Path whole = concat(pieces);
    internal_check(whole.source() == arc.source() && whole.target == arc.target,
                   "normal arc moved its endpoints");
    return {std::move(whole), std::move(d)};
}

void check_amortized(const Ocs& o, const SccAnalysis& analysis, const NormalizedPath& np) {
    const std::int64_t n = o.n;
    std::int64_t low_total = 0, cap_total = 0, up_total = 0, down_total = 0;
    std::map<std::pair<int, int>, std::vector<const NormalDecomposition*>> by_pair;
    for (const NormalizedArc& na : np.arcs) {
        if (!na.decomposition) {
            low_total += na.arc.length();
            continue;
        }
        const NormalDecomposition& d = *na.decomposition;
        low_total += d.pref.length() + d.suff.length();
        cap_total += d.cap.length();
        up_total += d.up.length();
        down_total += d.down.length();
        by_pair[{d.scc_up, d.scc_down}].push_back(&d);
    }
    internal_check(low_total <= 5 * n * n, "low pieces exceed their amortized bound");
    internal_check(cap_total <= n * n, "caps exceed their amortized bound");
    internal_check(up_total <= 4 * n * n, "climbs exceed their amortized bound");
    internal_check(down_total <= 4 * n * n, "descents exceed their amortized bound");

    for (const auto& [pair, ds] : by_pair) {
        const std::int64_t g = std::gcd(effect(analysis.cycle_up[pair.first]),
                                        -effect(analysis.cycle_down[pair.second]));
        internal_check(static_cast<std::int64_t>(ds.size()) <= g,
                       "too many normal arcs share one component pair");
        if (n > 8) continue;
        // Across two caps of the same component pair no configuration may
        // repeat a state at counters congruent modulo gcd.
        for (std::size_t i = 0; i < ds.size(); ++i)
            for (std::size_t j = i + 1; j < ds.size(); ++j) {
                std::unordered_set<std::pair<State, std::int64_t>, PairHash> seen;
                for (const Config& c : path_configs(ds[i]->cap))
                    seen.insert({c.state, pos_mod(c.counter, g)});
                for (const Config& c : path_configs(ds[j]->cap))
                    internal_check(seen.count({c.state, pos_mod(c.counter, g)}) == 0,
                                   "caps of one component pair share a residue class");
            }
    }
}

}  // namespace

NormalizedArc normalize_arc(const Ocs& o, const SccAnalysis& analysis, const Path& arc) {
    reject_oversized(o);
    if (validate_path_in(o, arc))
        throw precondition_error("normalize_arc input is not a valid path of the system");
    if (!is_arc(arc)) throw precondition_error("normalize_arc input is not an arc");

    // An endpoint pair with any witness under the low threshold takes the
    // shortest such witness and skips the decomposition entirely.
    if (std::optional<Path> low = shortest_low_arc(o, arc.source(), arc.target))
        return {std::move(*low), std::nullopt};

    try {
        return build_normal_arc(o, analysis, arc);
    } catch (const not_fireable_error& e) {
        throw internal_error(std::string("normalization step not fireable: ") + e.what());
    }
}

std::optional<NormalizedPath> normalize_path_detailed(const Ocs& o,
                                                      const SccAnalysis& analysis,
                                                      const Config& alpha,
                                                      const Config& beta) {
    reject_oversized(o);
    std::optional<Path> seed = min_zero_path(o, alpha, beta);
    if (!seed) return std::nullopt;

    NormalizedPath out;
    std::vector<Path> arcs = split_arcs(*seed);
    if (arcs.empty()) {
        out.path = Path::empty_at(alpha);
        return out;
    }
    std::vector<Path> pieces;
    pieces.reserve(arcs.size());
    for (const Path& a : arcs) {
        NormalizedArc na = normalize_arc(o, analysis, a);
        pieces.push_back(na.arc);
        out.arcs.push_back(std::move(na));
    }
    out.path = concat(pieces);

    internal_check(out.path.source() == alpha && out.path.target == beta,
                   "normalized path moved its endpoints");
    internal_check(intermediate_zeros(out.path) == intermediate_zeros(*seed),
                   "normalization changed the zero count");
    internal_check(!validate_path_in(o, out.path).has_value(),
                   "normalized path is not valid in the system");
    internal_check(static_cast<std::int64_t>(out.path.length()) <=
                       zero_zero_length_bound(o.n),
                   "normalized path exceeds the quadratic length bound");
    check_amortized(o, analysis, out);
    return out;
}

std::optional<Path> normalize_path(const Ocs& o, const Config& alpha, const Config& beta) {
    SccAnalysis analysis = analyze(o);
    std::optional<NormalizedPath> detail = normalize_path_detailed(o, analysis, alpha, beta);
    if (!detail) return std::nullopt;
    return std::move(detail->path);
}

}  // namespace ocspath
