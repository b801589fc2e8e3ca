#include "ocspath/generators.hpp"

#include <numeric>
#include <string>

namespace ocspath {

namespace {

std::string idx_name(const char* stem, int i) {
    return std::string(stem) + "_" + std::to_string(i);
}

// Stateless mixer; mix() keys it by seed, stream and element index so that
// each generated artifact is a pure function of its coordinates.
std::uint64_t mix(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    return splitmix64(splitmix64(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1))) ^ index);
}

// Keeps an element with the given probability: the top 53 bits of the hash
// are compared against floor(density * 2^53).
bool coin(std::uint64_t h, double density) {
    if (density <= 0.0) return false;
    if (density >= 1.0) return true;
    return (h >> 11) < static_cast<std::uint64_t>(density * 9007199254740992.0);
}

std::string letter_name(int i) {
    if (i < 26) return std::string(1, static_cast<char>('a' + i));
    return "x" + std::to_string(i);
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

GeneratedOcs example1(int n) {
    if (n < 2) throw precondition_error("example1 requires n >= 2");
    auto p = [&](int i) { return static_cast<State>(i - 1); };      // p_1..p_n
    auto q = [&](int i) { return static_cast<State>(n + i - 1); };  // q_1..q_n

    std::vector<Transition> pos, zero;
    zero.push_back({p(1), 1, p(2), Guard::zero});
    for (int i = 2; i < n; ++i) pos.push_back({p(i), 1, p(i + 1), Guard::pos});
    pos.push_back({p(n), 0, q(1), Guard::pos});
    for (int i = 1; i < n; ++i) pos.push_back({q(i), 0, q(i + 1), Guard::pos});
    pos.push_back({q(n), -1, q(1), Guard::pos});

    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back(idx_name("p", i));
    for (int i = 1; i <= n; ++i) names.push_back(idx_name("q", i));

    return {Ocs::make(2 * n, std::move(pos), std::move(zero), std::move(names)),
            Config{p(1), 0}, Config{q(1), 0}};
}

GeneratedOcs example2(int k, int m) {
    if (k < 2 || m < 2) throw precondition_error("example2 requires k, m >= 2");
    if (std::gcd(k, m) != 1) throw precondition_error("example2 requires coprime k and m");
    auto p = [&](int i) { return static_cast<State>(i); };      // p_0..p_{k-1}
    auto q = [&](int j) { return static_cast<State>(k + j); };  // q_0..q_{m-1}
    State s1 = static_cast<State>(k + m);
    State s2 = static_cast<State>(k + m + 1);

    std::vector<Transition> pos, zero;
    for (int i = 0; i < k; ++i) pos.push_back({p(i), 1, p((i + 1) % k), Guard::pos});
    for (int j = 0; j < m; ++j) pos.push_back({q(j), -1, q((j + 1) % m), Guard::pos});
    pos.push_back({p(0), 0, q(0), Guard::pos});
    pos.push_back({q(m - 1), -1, s1, Guard::pos});
    zero.push_back({p(0), 1, p(1), Guard::zero});
    zero.push_back({s1, 0, s2, Guard::zero});

    std::vector<std::string> names;
    for (int i = 0; i < k; ++i) names.push_back(idx_name("p", i));
    for (int j = 0; j < m; ++j) names.push_back(idx_name("q", j));
    names.push_back("s_1");
    names.push_back("s_2");

    return {Ocs::make(k + m + 2, std::move(pos), std::move(zero), std::move(names)),
            Config{p(0), 0}, Config{s2, 0}};
}

GeneratedOcs example3(int n, std::int64_t c_alpha, std::int64_t c_beta) {
    if (n < 2) throw precondition_error("example3 requires n >= 2");
    if (c_alpha < 0 || c_beta < 0)
        throw precondition_error("example3 requires nonnegative endpoint counters");
    auto a = [&](int i) { return static_cast<State>(i - 1); };
    auto p = [&](int i) { return static_cast<State>(n + i - 1); };
    auto q = [&](int i) { return static_cast<State>(2 * n + i - 1); };
    auto b = [&](int i) { return static_cast<State>(3 * n + i - 1); };

    std::vector<Transition> pos, zero;
    // Core counting gadget on the p/q states.
    zero.push_back({p(1), 1, p(2), Guard::zero});
    for (int i = 2; i < n; ++i) pos.push_back({p(i), 1, p(i + 1), Guard::pos});
    pos.push_back({p(n), 0, q(1), Guard::pos});
    for (int i = 1; i < n; ++i) pos.push_back({q(i), 0, q(i + 1), Guard::pos});
    pos.push_back({q(n), -1, q(1), Guard::pos});
    // Drain ring before the gadget and fill ring after it; both usable at
    // zero except for the drain's decrement.
    pos.push_back({a(n), -1, a(1), Guard::pos});
    pos.push_back({b(n), 1, b(1), Guard::pos});
    zero.push_back({b(n), 1, b(1), Guard::zero});
    for (int i = 1; i < n; ++i) {
        pos.push_back({a(i), 0, a(i + 1), Guard::pos});
        zero.push_back({a(i), 0, a(i + 1), Guard::zero});
        pos.push_back({b(i), 0, b(i + 1), Guard::pos});
        zero.push_back({b(i), 0, b(i + 1), Guard::zero});
    }
    zero.push_back({a(n), 0, p(1), Guard::zero});
    zero.push_back({q(1), 0, b(1), Guard::zero});

    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back(idx_name("a", i));
    for (int i = 1; i <= n; ++i) names.push_back(idx_name("p", i));
    for (int i = 1; i <= n; ++i) names.push_back(idx_name("q", i));
    for (int i = 1; i <= n; ++i) names.push_back(idx_name("b", i));

    return {Ocs::make(4 * n, std::move(pos), std::move(zero), std::move(names)),
            Config{a(1), c_alpha}, Config{b(n), c_beta}};
}

Ocs random_ocs(int n, double pos_density, double zero_density, std::uint64_t seed) {
    if (n <= 0) throw precondition_error("random_ocs requires n >= 1");
    std::vector<Transition> pos, zero;
    for (State src = 0; src < n; ++src) {
        for (std::int32_t eff = -1; eff <= 1; ++eff)
            for (State dst = 0; dst < n; ++dst) {
                std::uint64_t index =
                    (static_cast<std::uint64_t>(src) * 3 + (eff + 1)) * n + dst;
                if (coin(mix(seed, 1, index), pos_density))
                    pos.push_back({src, eff, dst, Guard::pos});
            }
        for (std::int32_t eff = 0; eff <= 1; ++eff)
            for (State dst = 0; dst < n; ++dst) {
                std::uint64_t index = (static_cast<std::uint64_t>(src) * 2 + eff) * n + dst;
                if (coin(mix(seed, 2, index), zero_density))
                    zero.push_back({src, eff, dst, Guard::zero});
            }
    }
    return Ocs::make(n, std::move(pos), std::move(zero));
}

Oca random_oca(int n, double pos_density, double zero_density, int alphabet_size,
               double epsilon_prob, std::uint64_t seed) {
    if (alphabet_size <= 0) throw precondition_error("random_oca requires letters");
    Ocs base = random_ocs(n, pos_density, zero_density, seed);
    std::vector<std::string> alphabet;
    for (int i = 0; i < alphabet_size; ++i) alphabet.push_back(letter_name(i));

    std::vector<Oca::LabeledTransition> labeled;
    std::uint64_t index = 0;
    for (const Transition& t : base.t_pos) {
        std::int32_t label = coin(mix(seed, 3, index), epsilon_prob)
                                 ? -1
                                 : static_cast<std::int32_t>(mix(seed, 4, index) % alphabet_size);
        labeled.push_back({t, label});
        ++index;
    }
    for (const Transition& t : base.t_zero) {
        std::int32_t label = coin(mix(seed, 3, index), epsilon_prob)
                                 ? -1
                                 : static_cast<std::int32_t>(mix(seed, 4, index) % alphabet_size);
        labeled.push_back({t, label});
        ++index;
    }

    std::vector<State> initial, finals;
    for (State s = 0; s < n; ++s) {
        if (coin(mix(seed, 5, s), 0.3)) initial.push_back(s);
        if (coin(mix(seed, 6, s), 0.3)) finals.push_back(s);
    }
    if (initial.empty()) initial.push_back(0);
    if (finals.empty()) finals.push_back(n - 1);

    return Oca::make(n, std::move(labeled), std::move(alphabet), std::move(initial),
                     std::move(finals), base.names);
}

ZOcs random_zocs(int n, double pos_density, double neg_density, double zero_density,
                 std::uint64_t seed) {
    if (n <= 0) throw precondition_error("random_zocs requires n >= 1");
    std::vector<Transition> pos, neg, zero;
    for (State src = 0; src < n; ++src)
        for (std::int32_t eff = -1; eff <= 1; ++eff)
            for (State dst = 0; dst < n; ++dst) {
                std::uint64_t index =
                    (static_cast<std::uint64_t>(src) * 3 + (eff + 1)) * n + dst;
                if (coin(mix(seed, 7, index), pos_density))
                    pos.push_back({src, eff, dst, Guard::pos});
                if (coin(mix(seed, 8, index), neg_density))
                    neg.push_back({src, eff, dst, Guard::neg});
                if (coin(mix(seed, 9, index), zero_density))
                    zero.push_back({src, eff, dst, Guard::zero});
            }
    return ZOcs::make(n, std::move(pos), std::move(neg), std::move(zero));
}

}  // namespace ocspath
