#include <doctest.h>

#include <vector>

#include "ocspath/generators.hpp"
#include "ocspath/reach.hpp"
#include "ocspath/zocs.hpp"

using namespace ocspath;

namespace {

// Two states joined through zero from both sides: a descent through zero into
// the negatives and a climb back.
ZOcs crossing() {
    return ZOcs::make(2,
                      /*pos=*/{{0, -1, 0, Guard::pos}},
                      /*neg=*/{{1, -1, 1, Guard::neg}, {1, 1, 0, Guard::neg}},
                      /*zero=*/{{0, -1, 1, Guard::zero}, {0, 1, 0, Guard::zero}});
}

}  // namespace

TEST_CASE("make splits the guard sets and out() picks by counter sign") {
    ZOcs z = crossing();
    CHECK(z.t_pos.size() == 1);
    CHECK(z.t_neg.size() == 2);
    CHECK(z.t_zero.size() == 2);
    CHECK(z.out(Config{0, 3}).size() == 1);
    CHECK(z.out(Config{0, 0}).size() == 2);
    CHECK(z.out(Config{1, -2}).size() == 2);
    CHECK(z.out(Config{1, 5}).empty());
    CHECK(z.state_by_name("s1") == State{1});

    CHECK_THROWS_AS(ZOcs::make(1, {{0, 0, 0, Guard::zero}}, {}, {}), precondition_error);
    CHECK_THROWS_AS(ZOcs::make(1, {}, {}, {{0, 2, 0, Guard::zero}}), precondition_error);
}

TEST_CASE("negate mirrors the system and is an involution") {
    ZOcs z = crossing();
    ZOcs m = negate(z);
    CHECK(m.t_pos == std::vector<Transition>{{1, -1, 0, Guard::pos}, {1, 1, 1, Guard::pos}});
    CHECK(m.t_neg == std::vector<Transition>{{0, 1, 0, Guard::neg}});
    CHECK(m.t_zero == std::vector<Transition>{{0, -1, 0, Guard::zero}, {0, 1, 1, Guard::zero}});
    CHECK(negate(m) == z);

    for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
        ZOcs r = random_zocs(6, 0.3, 0.3, 0.2, seed);
        CHECK(negate(negate(r)) == r);
    }
}

TEST_CASE("negated paths run in the negated system") {
    ZOcs z = crossing();
    auto rho = z_shortest_path(z, Config{0, 2}, Config{1, -2});
    REQUIRE(rho.has_value());
    CHECK(!z_validate_path(z, *rho).has_value());

    Path mirrored = z_negate_path(*rho);
    CHECK(mirrored.length() == rho->length());
    CHECK(!z_validate_path(negate(z), mirrored).has_value());
    CHECK(mirrored.source() == Config{0, -2});
    CHECK(mirrored.target == Config{1, 2});
    CHECK(z_negate_path(mirrored) == *rho);
}

TEST_CASE("z_fire demands the matching sign guard") {
    Transition at_pos{0, -1, 0, Guard::pos};
    Transition at_zero{0, 1, 0, Guard::zero};
    Transition at_neg{0, 1, 0, Guard::neg};
    CHECK(z_fire(Config{0, 2}, at_pos) == Config{0, 1});
    CHECK(z_fire(Config{0, 1}, at_pos) == Config{0, 0});
    CHECK(!z_fire(Config{0, 0}, at_pos).has_value());
    CHECK(z_fire(Config{0, 0}, at_zero) == Config{0, 1});
    CHECK(!z_fire(Config{0, -1}, at_zero).has_value());
    CHECK(z_fire(Config{0, -1}, at_neg) == Config{0, 0});
    CHECK(!z_fire(Config{1, -1}, at_neg).has_value());  // wrong source
}

TEST_CASE("shortest integer paths cross zero when they must") {
    ZOcs z = crossing();
    auto rho = z_shortest_path(z, Config{0, 2}, Config{1, -2});
    REQUIRE(rho.has_value());
    // Descend 2, hop through zero, descend once more on the negative side.
    CHECK(rho->length() == 4);
    CHECK(static_cast<std::int64_t>(rho->length()) <= z_length_bound(z.n, 2, -2));

    auto self = z_shortest_path(z, Config{0, 2}, Config{0, 2});
    REQUIRE(self.has_value());
    CHECK(self->length() == 0);

    CHECK(!z_shortest_path(z, Config{1, -1}, Config{0, 5}).has_value());
    CHECK_THROWS_AS(z_shortest_path(z, Config{5, 0}, Config{0, 0}), precondition_error);
}

TEST_CASE("signed projections keep one half of the system") {
    ZOcs z = crossing();
    Ocs plus = signed_projection(z, Sign::plus);
    CHECK(plus.t_pos == z.t_pos);
    CHECK(plus.t_zero == std::vector<Transition>{{0, 1, 0, Guard::zero}});

    Ocs minus = signed_projection(z, Sign::minus);
    CHECK(minus.t_pos ==
          std::vector<Transition>{{1, -1, 0, Guard::pos}, {1, 1, 1, Guard::pos}});
    CHECK(minus.t_zero == std::vector<Transition>{{0, 1, 1, Guard::zero}});
}

TEST_CASE("augmentation turns opposite-side excursions into zero tests") {
    ZOcs z = ZOcs::make(2,
                        /*pos=*/{},
                        /*neg=*/{{1, 1, 0, Guard::neg}},
                        /*zero=*/{{0, -1, 1, Guard::zero}});
    // From (0,0) the only move dips to (1,-1) and climbs right back to (0,0).
    Ocs aug = augmented(z, Sign::plus);
    CHECK(aug.t_zero == std::vector<Transition>{{0, 0, 0, Guard::zero}});
    CHECK(aug.t_pos.empty());

    // The negative-side view keeps its own zero test but gains no dips:
    // nothing returns to zero through the positive side.
    Ocs aug_minus = augmented(z, Sign::minus);
    CHECK(aug_minus.t_zero == std::vector<Transition>{{0, 1, 1, Guard::zero}});
}

TEST_CASE("augmented systems reach zero-to-zero exactly like the original") {
    for (int trial = 0; trial < 25; ++trial) {
        int n = 2 + trial % 4;
        ZOcs z = random_zocs(n, 0.3, 0.3, 0.25, 900 + trial);
        Ocs aug = augmented(z, Sign::plus);
        for (State p = 0; p < n; ++p)
            for (State q = 0; q < n; ++q) {
                bool in_z = z_shortest_path(z, {p, 0}, {q, 0}).has_value();
                bool in_aug = shortest_path(aug, {p, 0}, {q, 0}).has_value();
                CHECK(in_z == in_aug);
            }
    }
}

TEST_CASE("uniform guard sets make the dynamics shift invariant") {
    std::vector<Transition> triples{{0, 1, 1, Guard::pos}, {1, 0, 2, Guard::pos},
                                    {2, -1, 0, Guard::pos}, {2, 1, 2, Guard::pos}};
    auto with_guard = [&](Guard g) {
        std::vector<Transition> out;
        for (Transition t : triples) {
            t.guard = g;
            out.push_back(t);
        }
        return out;
    };
    ZOcs z = ZOcs::make(3, with_guard(Guard::pos), with_guard(Guard::neg),
                        with_guard(Guard::zero));
    for (std::int64_t shift : {-5, -1, 3, 40}) {
        auto base = z_shortest_path(z, Config{0, 0}, Config{2, 2});
        auto moved = z_shortest_path(z, Config{0, shift}, Config{2, 2 + shift});
        REQUIRE(base.has_value());
        REQUIRE(moved.has_value());
        CHECK(base->length() == moved->length());
    }
}
