#include <doctest.h>

#include <cstdint>
#include <vector>

#include "ocspath/generators.hpp"
#include "ocspath/oracle.hpp"
#include "ocspath/reach.hpp"

using namespace ocspath;

namespace {

// Independent restatement of the documented membership rule, kept separate
// from the library implementation on purpose.
std::uint64_t ref_mix(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    return splitmix64(splitmix64(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1))) ^ index);
}

bool ref_coin(std::uint64_t h, double density) {
    if (density <= 0.0) return false;
    if (density >= 1.0) return true;
    return (h >> 11) < static_cast<std::uint64_t>(density * 9007199254740992.0);
}

std::int64_t exact_length(const GeneratedOcs& g) {
    auto rho = shortest_path(g.ocs, g.source, g.target);
    REQUIRE(rho.has_value());
    return static_cast<std::int64_t>(rho->length());
}

}  // namespace

TEST_CASE("splitmix64 matches its published reference values") {
    CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
    CHECK(splitmix64(splitmix64(0)) != splitmix64(0));
}

TEST_CASE("example1 walks exactly n squared steps") {
    for (int n : {2, 3, 4, 7}) {
        GeneratedOcs g = example1(n);
        CHECK(g.ocs.n == 2 * n);
        CHECK(g.ocs.names[0] == "p_1");
        CHECK(g.ocs.names[n] == "q_1");
        CHECK(g.source == Config{0, 0});
        CHECK(g.target == Config{n, 0});
        CHECK(g.ocs.t_zero.size() == 1);
        CHECK(g.ocs.t_pos.size() == static_cast<std::size_t>(2 * n - 1));
        CHECK(exact_length(g) == static_cast<std::int64_t>(n) * n);
    }
    CHECK_THROWS_AS(example1(1), precondition_error);
}

TEST_CASE("example2 forces the climb to the cycle product") {
    GeneratedOcs g = example2(3, 2);
    CHECK(g.ocs.n == 7);
    CHECK(g.ocs.t_pos.size() == 3 + 2 + 2);
    CHECK(g.ocs.t_zero.size() == 2);
    CHECK(g.ocs.state_by_name("s_2") == State{6});
    CHECK(exact_length(g) == 2 * 3 * 2 + 2);

    GeneratedOcs g2 = example2(4, 3);
    CHECK(exact_length(g2) == 2 * 4 * 3 + 2);

    CHECK_THROWS_AS(example2(4, 2), precondition_error);  // not coprime
    CHECK_THROWS_AS(example2(1, 2), precondition_error);
}

TEST_CASE("example3 prices both endpoint counters") {
    CHECK(exact_length(example3(2, 0, 0)) == 8);
    CHECK(exact_length(example3(2, 1, 0)) == 10);
    CHECK(exact_length(example3(2, 0, 1)) == 10);
    CHECK(exact_length(example3(3, 2, 1)) == 9 + 3 * (2 + 1 + 2));

    GeneratedOcs g = example3(2, 1, 2);
    CHECK(g.ocs.n == 8);
    CHECK(g.source == Config{0, 1});
    CHECK(g.target == Config{7, 2});

    CHECK_THROWS_AS(example3(1, 0, 0), precondition_error);
    CHECK_THROWS_AS(example3(2, -1, 0), precondition_error);
}

TEST_CASE("random_ocs follows the documented membership rule") {
    const int n = 4;
    const double pos_density = 0.37, zero_density = 0.22;
    const std::uint64_t seed = 99;
    Ocs o = random_ocs(n, pos_density, zero_density, seed);

    std::vector<Transition> pos, zero;
    for (State src = 0; src < n; ++src) {
        for (std::int32_t eff = -1; eff <= 1; ++eff)
            for (State dst = 0; dst < n; ++dst) {
                std::uint64_t index =
                    (static_cast<std::uint64_t>(src) * 3 + (eff + 1)) * n + dst;
                if (ref_coin(ref_mix(seed, 1, index), pos_density))
                    pos.push_back({src, eff, dst, Guard::pos});
            }
        for (std::int32_t eff = 0; eff <= 1; ++eff)
            for (State dst = 0; dst < n; ++dst) {
                std::uint64_t index = (static_cast<std::uint64_t>(src) * 2 + eff) * n + dst;
                if (ref_coin(ref_mix(seed, 2, index), zero_density))
                    zero.push_back({src, eff, dst, Guard::zero});
            }
    }
    CHECK(o == Ocs::make(n, pos, zero));
}

TEST_CASE("random generators are deterministic in the seed") {
    CHECK(random_ocs(5, 0.3, 0.3, 42) == random_ocs(5, 0.3, 0.3, 42));
    CHECK(random_ocs(5, 0.3, 0.3, 42) != random_ocs(5, 0.3, 0.3, 43));
    CHECK(random_zocs(5, 0.3, 0.3, 0.3, 8) == random_zocs(5, 0.3, 0.3, 0.3, 8));
    CHECK(random_oca(5, 0.3, 0.3, 3, 0.5, 8) == random_oca(5, 0.3, 0.3, 3, 0.5, 8));
}

TEST_CASE("density limits produce empty and complete systems") {
    Ocs empty = random_ocs(3, 0.0, 0.0, 5);
    CHECK(empty.t_pos.empty());
    CHECK(empty.t_zero.empty());

    Ocs full = random_ocs(3, 1.0, 1.0, 5);
    CHECK(full.t_pos.size() == 3 * 3 * 3);   // all effects
    CHECK(full.t_zero.size() == 2 * 3 * 3);  // zero tests cannot decrement

    ZOcs zfull = random_zocs(2, 1.0, 1.0, 1.0, 5);
    CHECK(zfull.t_pos.size() == 12);
    CHECK(zfull.t_neg.size() == 12);
    CHECK(zfull.t_zero.size() == 12);
}

TEST_CASE("random automata carry sane labels and state sets") {
    Oca a = random_oca(7, 0.4, 0.3, 3, 0.25, 123);
    CHECK(a.alphabet == std::vector<std::string>{"a", "b", "c"});
    CHECK(!a.initial_states.empty());
    CHECK(!a.final_states.empty());
    CHECK(a.label_pos.size() == a.ocs.t_pos.size());
    CHECK(a.label_zero.size() == a.ocs.t_zero.size());
    for (std::int32_t l : a.label_pos) {
        CHECK(l >= -1);
        CHECK(l < 3);
    }
    Oca all_eps = random_oca(4, 0.5, 0.5, 2, 1.0, 7);
    for (std::int32_t l : all_eps.label_pos) CHECK(l == -1);
    for (std::int32_t l : all_eps.label_zero) CHECK(l == -1);
}
