#include <doctest.h>

#include <algorithm>
#include <unordered_set>

#include "ocspath/ocs.hpp"

using namespace ocspath;

namespace {

// Small fixture: a climb loop next to a drain loop, joined at state 1.
//   0 -(+1)-> 1 at zero;  1 -(+1)-> 0, 0 -(0)-> 1 at positive;
//   1 -(-1)-> 2, 2 -(0)-> 1 at positive.
Ocs ladder() {
    return Ocs::make(3,
                     {{1, 1, 0, Guard::pos},
                      {0, 0, 1, Guard::pos},
                      {1, -1, 2, Guard::pos},
                      {2, 0, 1, Guard::pos}},
                     {{0, 1, 1, Guard::zero}});
}

}  // namespace

TEST_CASE("make canonicalizes and validates transitions") {
    Ocs o = Ocs::make(2, {{1, 0, 0, Guard::pos}, {0, 1, 1, Guard::pos}, {0, 1, 1, Guard::pos}},
                      {{0, 0, 1, Guard::zero}});
    CHECK(o.t_pos.size() == 2);  // duplicate dropped
    CHECK(std::is_sorted(o.t_pos.begin(), o.t_pos.end()));
    CHECK(o.names == std::vector<std::string>{"s0", "s1"});
    CHECK(o.state_by_name("s1") == State{1});
    CHECK(!o.state_by_name("nope").has_value());

    CHECK_THROWS_AS(Ocs::make(0, {}, {}), precondition_error);
    CHECK_THROWS_AS(Ocs::make(2, {{0, 1, 2, Guard::pos}}, {}), precondition_error);
    CHECK_THROWS_AS(Ocs::make(2, {{0, 2, 1, Guard::pos}}, {}), precondition_error);
    CHECK_THROWS_AS(Ocs::make(2, {{0, 1, 1, Guard::zero}}, {}), precondition_error);
    CHECK_THROWS_AS(Ocs::make(2, {}, {{0, -1, 1, Guard::zero}}), precondition_error);
    CHECK_THROWS_AS(Ocs::make(2, {}, {}, {"only_one"}), precondition_error);
}

TEST_CASE("out spans select by counter") {
    Ocs o = ladder();
    CHECK(o.out(Config{0, 0}).size() == 1);  // the zero test
    CHECK(o.out(Config{0, 0})[0].guard == Guard::zero);
    CHECK(o.out(Config{0, 3}).size() == 1);  // the positive transition from 0
    CHECK(o.out(Config{0, 3})[0].guard == Guard::pos);
    CHECK(o.out_pos(1).size() == 2);
    CHECK(o.out_zero(1).empty());
    CHECK(o.out(Config{2, 0}).empty());
}

TEST_CASE("fire respects guards, source states and nonnegativity") {
    Transition up{0, 1, 1, Guard::pos};
    Transition zup{0, 1, 1, Guard::zero};
    CHECK(fire(Config{0, 2}, up) == Config{1, 3});
    CHECK(!fire(Config{0, 0}, up).has_value());   // pos guard at zero
    CHECK(!fire(Config{0, 2}, zup).has_value());  // zero guard above zero
    CHECK(fire(Config{0, 0}, zup) == Config{1, 1});
    CHECK(!fire(Config{1, 2}, up).has_value());  // wrong source
    Transition down{1, -1, 0, Guard::pos};
    CHECK(fire(Config{1, 1}, down) == Config{0, 0});
}

TEST_CASE("fasten threads a sequence and reports the failing step") {
    TransitionSeq seq{{0, 1, 1, Guard::zero}, {1, 1, 0, Guard::pos}, {0, 0, 1, Guard::pos}};
    Path rho = fasten(Config{0, 0}, seq);
    CHECK(rho.length() == 3);
    CHECK(rho.source() == Config{0, 0});
    CHECK(rho.target == Config{1, 2});
    CHECK(rho.steps[1].first == Config{1, 1});

    TransitionSeq bad{{0, 1, 1, Guard::zero}, {0, 0, 1, Guard::pos}};
    try {
        fasten(Config{0, 0}, bad);
        FAIL("expected not_fireable_error");
    } catch (const not_fireable_error& e) {
        CHECK(e.step == 1);  // second entry starts at state 1, not 0
    }
}

TEST_CASE("projection and fasten invert each other") {
    Ocs o = ladder();
    Path rho = fasten(Config{0, 0},
                      {{0, 1, 1, Guard::zero}, {1, 1, 0, Guard::pos}, {0, 0, 1, Guard::pos},
                       {1, -1, 2, Guard::pos}, {2, 0, 1, Guard::pos}, {1, -1, 2, Guard::pos}});
    CHECK(!validate_path_in(o, rho).has_value());
    TransitionSeq sigma = proj(rho);
    CHECK(effect(sigma) == 0);
    CHECK(consistent(sigma));
    CHECK(fasten(rho.source(), sigma) == rho);

    std::vector<Config> cs = path_configs(rho);
    CHECK(cs.size() == rho.length() + 1);
    CHECK(cs.front() == rho.source());
    CHECK(cs.back() == rho.target);
    CHECK(max_counter(rho) == 2);
    CHECK(intermediate_zeros(rho) == 0);
    CHECK(rho.target == Config{2, 0});
}

TEST_CASE("empty path behaves as a single configuration") {
    Path e = Path::empty_at(Config{1, 5});
    CHECK(e.length() == 0);
    CHECK(e.source() == Config{1, 5});
    CHECK(e.target == Config{1, 5});
    CHECK(path_configs(e).size() == 1);
    CHECK(max_counter(e) == 5);
    CHECK(intermediate_zeros(e) == 0);
    CHECK(remove_repeats(e) == e);
}

TEST_CASE("concat checks the junction") {
    Path a = fasten(Config{0, 0}, {{0, 1, 1, Guard::zero}});
    Path b = fasten(Config{1, 1}, {{1, -1, 2, Guard::pos}});
    Path ab = concat(a, b);
    CHECK(ab.length() == 2);
    CHECK(ab.source() == Config{0, 0});
    CHECK(ab.target == Config{2, 0});

    Path c = fasten(Config{1, 7}, {{1, -1, 2, Guard::pos}});
    CHECK_THROWS_AS(concat(a, c), precondition_error);

    std::vector<Path> pieces{a, b, Path::empty_at(Config{2, 0})};
    CHECK(concat(pieces) == ab);
    CHECK_THROWS_AS(concat(std::span<const Path>{}), precondition_error);
}

TEST_CASE("validate_path names the rule and the step") {
    Ocs o = ladder();
    Path rho = fasten(Config{0, 0}, {{0, 1, 1, Guard::zero}, {1, -1, 2, Guard::pos}});
    CHECK(!validate_path(rho).has_value());
    CHECK(!validate_path_in(o, rho).has_value());

    Path broken = rho;
    broken.steps[1].first.counter = 9;
    auto v = validate_path(broken);
    REQUIRE(v.has_value());
    CHECK(v->step == 1);
    CHECK(v->rule == "step configuration does not chain");

    broken = rho;
    broken.target.counter = 5;
    v = validate_path(broken);
    REQUIRE(v.has_value());
    CHECK(v->step == 2);
    CHECK(v->rule == "target does not chain");

    broken = rho;
    broken.steps[1].second.guard = Guard::zero;  // zero guard at counter 1
    v = validate_path(broken);
    REQUIRE(v.has_value());
    CHECK(v->step == 1);
    CHECK(v->rule == "transition not fireable at its configuration");

    Path foreign = fasten(Config{1, 1}, {{1, 0, 1, Guard::pos}});
    CHECK(!validate_path(foreign).has_value());
    v = validate_path_in(o, foreign);
    REQUIRE(v.has_value());
    CHECK(v->rule == "transition not in the system");

    Path outside = Path::empty_at(Config{7, 1});
    v = validate_path_in(o, outside);
    REQUIRE(v.has_value());
    CHECK(v->step == 0);
    CHECK(v->rule == "state outside the system");
}

TEST_CASE("remove_repeats keeps endpoints and removes all repeats") {
    // 0 -> 1 -> 0 -> 1 -> 2 over the ladder, with (1,1) visited twice.
    Path rho = fasten(Config{0, 0},
                      {{0, 1, 1, Guard::zero}, {1, 1, 0, Guard::pos}, {0, 0, 1, Guard::pos},
                       {1, -1, 2, Guard::pos}, {2, 0, 1, Guard::pos}, {1, -1, 2, Guard::pos}});
    // Configurations: (0,0) (1,1) (0,2) (1,2) (2,1) (1,1) (2,0); (1,1) repeats.
    Path slim = remove_repeats(rho);
    CHECK(slim.source() == rho.source());
    CHECK(slim.target == rho.target);
    CHECK(slim.length() == 2);  // (0,0) -> (1,1) -> (2,0)
    CHECK(intermediate_zeros(slim) <= intermediate_zeros(rho));
    CHECK(remove_repeats(slim) == slim);

    std::unordered_set<Config, ConfigHash> seen;
    for (const Config& c : path_configs(slim)) CHECK(seen.insert(c).second);

    CHECK(remove_repeats(Path::empty_at(Config{0, 0})).length() == 0);
}

TEST_CASE("split_arcs cuts exactly at interior zeros") {
    // Two zero-to-zero bumps glued at (2,0).
    Ocs o2 = Ocs::make(3,
                       {{1, -1, 2, Guard::pos}},
                       {{0, 1, 1, Guard::zero}, {2, 1, 1, Guard::zero}});
    Path first = fasten(Config{0, 0}, {{0, 1, 1, Guard::zero}, {1, -1, 2, Guard::pos}});
    Path second = fasten(Config{2, 0}, {{2, 1, 1, Guard::zero}, {1, -1, 2, Guard::pos}});
    Path rho = concat(first, second);
    CHECK(!validate_path_in(o2, rho).has_value());

    std::vector<Path> arcs = split_arcs(rho);
    REQUIRE(arcs.size() == 2);
    CHECK(arcs[0] == first);
    CHECK(arcs[1] == second);
    for (const Path& a : arcs) {
        CHECK(a.source().counter == 0);
        CHECK(a.target.counter == 0);
        for (std::size_t i = 1; i < a.steps.size(); ++i)
            CHECK(a.steps[i].first.counter > 0);
    }

    CHECK(split_arcs(Path::empty_at(Config{0, 0})).empty());
    CHECK_THROWS_AS(split_arcs(fasten(Config{1, 2}, {{1, -1, 2, Guard::pos}})),
                    precondition_error);
}

TEST_CASE("intermediate zeros count only strictly interior configurations") {
    Path first = fasten(Config{0, 0}, {{0, 1, 1, Guard::zero}, {1, -1, 2, Guard::pos}});
    Path second = fasten(Config{2, 0}, {{2, 1, 1, Guard::zero}, {1, -1, 2, Guard::pos}});
    Path rho = concat(first, second);
    CHECK(intermediate_zeros(rho) == 1);    // endpoints at zero do not count
    CHECK(intermediate_zeros(first) == 0);  // a plain arc has none
}
