#include <doctest.h>

#include <sstream>
#include <string>
#include <variant>

#include "ocspath/generators.hpp"
#include "ocspath/io.hpp"
#include "ocspath/reach.hpp"
#include "ocspath/zocs.hpp"

using namespace ocspath;

namespace {

std::string reserialize(const std::string& text) {
    return serialize(parse_system(text));
}

}  // namespace

TEST_CASE("serialization round trips byte for byte") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        int n = 2 + static_cast<int>(seed % 7);
        std::string ocs_text = serialize(random_ocs(n, 0.35, 0.25, seed));
        CHECK(reserialize(ocs_text) == ocs_text);

        std::string oca_text =
            serialize(random_oca(n, 0.35, 0.25, 1 + seed % 4, 0.3, seed));
        CHECK(reserialize(oca_text) == oca_text);

        std::string zocs_text = serialize(random_zocs(n, 0.3, 0.3, 0.2, seed));
        CHECK(reserialize(zocs_text) == zocs_text);
    }
}

TEST_CASE("parsed documents equal the originals structurally") {
    Ocs o = random_ocs(5, 0.4, 0.3, 17);
    SystemDocument doc = parse_system(serialize(o));
    REQUIRE(std::holds_alternative<Ocs>(doc));
    CHECK(std::get<Ocs>(doc) == o);

    Oca a = random_oca(4, 0.5, 0.4, 2, 0.2, 17);
    SystemDocument adoc = parse_system(serialize(a));
    REQUIRE(std::holds_alternative<Oca>(adoc));
    CHECK(std::get<Oca>(adoc) == a);

    ZOcs z = random_zocs(4, 0.4, 0.4, 0.3, 17);
    SystemDocument zdoc = parse_system(serialize(z));
    REQUIRE(std::holds_alternative<ZOcs>(zdoc));
    CHECK(std::get<ZOcs>(zdoc) == z);
}

TEST_CASE("serialization uses the documented key order") {
    std::string text = serialize(example2(3, 2).ocs);
    CHECK(text.find("\"kind\"") < text.find("\"states\""));
    CHECK(text.find("\"states\"") < text.find("\"transitions\""));
    CHECK(text.find("\"src\"") < text.find("\"eff\""));
    CHECK(text.find("\"eff\"") < text.find("\"dst\""));
    CHECK(text.find("\"dst\"") < text.find("\"guard\""));
    CHECK(text.back() == '\n');

    std::string oca_text = serialize(random_oca(3, 0.5, 0.5, 2, 0.3, 4));
    CHECK(oca_text.find("\"alphabet\"") != std::string::npos);
    CHECK(oca_text.find("\"initial\"") < oca_text.find("\"final\""));
}

TEST_CASE("schema violations are reported by field") {
    auto message_of = [](const std::string& text) {
        try {
            parse_system(text);
        } catch (const io_error& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };

    CHECK(message_of("{") != "no error");
    CHECK(message_of(R"({"kind": "maze", "states": ["a"], "transitions": []})")
              .find("kind") != std::string::npos);
    CHECK(message_of(R"({"kind": "ocs", "states": ["a"]})").find("transitions") !=
          std::string::npos);
    CHECK(message_of(R"({"kind": "ocs", "states": ["a", "a"], "transitions": []})") ==
          "duplicate name \"a\" in states");

    std::string bad_guard = R"({"kind": "ocs", "states": ["a"], "transitions": [
        {"src": "a", "eff": -1, "dst": "a", "guard": "neg"}]})";
    CHECK(message_of(bad_guard) == "transition 0: guard \"neg\" requires kind \"zocs\"");

    std::string zero_dec = R"({"kind": "ocs", "states": ["a"], "transitions": [
        {"src": "a", "eff": -1, "dst": "a", "guard": "zero"}]})";
    CHECK(message_of(zero_dec).find("zero test cannot decrement") != std::string::npos);

    std::string unknown_src = R"({"kind": "ocs", "states": ["a"], "transitions": [
        {"src": "b", "eff": 0, "dst": "a", "guard": "pos"}]})";
    CHECK(message_of(unknown_src).find("\"b\"") != std::string::npos);

    std::string stray_label = R"({"kind": "ocs", "states": ["a"], "transitions": [
        {"src": "a", "eff": 0, "dst": "a", "guard": "pos", "label": "x"}]})";
    CHECK(message_of(stray_label).find("label only allowed") != std::string::npos);

    std::string stray_alphabet =
        R"({"kind": "zocs", "alphabet": ["x"], "states": ["a"], "transitions": []})";
    CHECK(message_of(stray_alphabet).find("only allowed for kind \"oca\"") !=
          std::string::npos);
}

TEST_CASE("paths serialize with indices and a recomputed summary") {
    GeneratedOcs g = example2(3, 2);
    SystemDocument doc{g.ocs};
    auto rho = shortest_path(g.ocs, g.source, g.target);
    REQUIRE(rho.has_value());

    std::string text = serialize_path(doc, *rho);
    CHECK(text.find("\"summary\"") != std::string::npos);
    CHECK(text.find("\"length\": 14") != std::string::npos);
    // Both endpoints and the rest stop at counter zero: three zero configs.
    CHECK(text.find("\"zeros\": 3") != std::string::npos);
    CHECK(text.find("\"max_counter\": 6") != std::string::npos);

    Path back = parse_path(doc, text);
    CHECK(back == *rho);
}

TEST_CASE("path parsing rejects corrupted documents") {
    GeneratedOcs g = example2(3, 2);
    SystemDocument doc{g.ocs};
    auto rho = shortest_path(g.ocs, g.source, g.target);
    REQUIRE(rho.has_value());
    std::string text = serialize_path(doc, *rho);

    auto message_of = [&](const std::string& t) {
        try {
            parse_path(doc, t);
        } catch (const io_error& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };

    std::string wrong_summary = text;
    auto at = wrong_summary.find("\"length\": 14");
    REQUIRE(at != std::string::npos);
    wrong_summary.replace(at, 12, "\"length\": 15");
    CHECK(message_of(wrong_summary) == "summary: length does not match the steps");

    std::string wrong_counter = text;
    at = wrong_counter.find("\"counter\": 1");
    REQUIRE(at != std::string::npos);
    wrong_counter.replace(at, 12, "\"counter\": 9");
    CHECK(message_of(wrong_counter).rfind("step ", 0) == 0);

    std::string wrong_index = text;
    at = wrong_index.find("\"transition_index\": ");
    REQUIRE(at != std::string::npos);
    wrong_index.replace(at, 20, "\"transition_index\": 999");
    CHECK(message_of(wrong_index).rfind("step ", 0) == 0);
}

TEST_CASE("serializing a foreign path is refused") {
    GeneratedOcs g = example1(2);
    SystemDocument doc{g.ocs};
    Path stray;
    stray.steps.push_back({{0, 0}, {0, 1, 1, Guard::pos}});
    stray.target = {1, 1};
    CHECK_THROWS_AS(serialize_path(doc, stray), precondition_error);
}

TEST_CASE("stream overloads agree with the string overloads") {
    Ocs o = random_ocs(4, 0.4, 0.3, 23);
    std::string text = serialize(o);
    std::istringstream in(text);
    SystemDocument doc = parse_system(in);
    CHECK(serialize(doc) == text);
}
