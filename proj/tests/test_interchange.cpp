#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <nlohmann/json.hpp>

#include "evid/interchange.hpp"
#include "test_support.hpp"

using namespace evid;
using evid::testing::random_mass;
using evid::testing::small_frame;
using nlohmann::json;

TEST_CASE("document shape") {
    const Frame frame({"a", "b"});
    const MassFunction m =
        MassFunction::from_assignments(frame, {{1, 0.6}, {3, 0.4}});
    const json doc = mass_to_document(m);
    CHECK(doc.at("frame") == json({"a", "b"}));
    CHECK(doc.at("masses").contains("a"));
    CHECK(doc.at("masses").contains("a|b"));
    CHECK(doc.at("masses").at("a").get<double>() == 0.6);
}

TEST_CASE("round trip is bitwise lossless") {
    Rng rng(41);
    for (int trial = 0; trial < 300; ++trial) {
        const Frame frame = small_frame(2 + static_cast<int>(rng.index(3)));
        const MassFunction m = random_mass(frame, rng);
        const MassFunction back = mass_from_string(mass_to_string(m));
        REQUIRE(back.frame() == m.frame());
        REQUIRE(back.focal_sets().size() == m.focal_sets().size());
        for (const auto& [set, value] : m.focal_sets()) {
            CHECK(back.mass(set) == value);  // exact, not approximate
        }
    }
}

TEST_CASE("parser rejects malformed documents") {
    CHECK_THROWS_AS(mass_from_string("not json"), IoError);
    CHECK_THROWS_AS(mass_from_string(R"({"frame": ["a","b"]})"), IoError);
    CHECK_THROWS_AS(mass_from_string(R"({"frame": ["a","b"], "masses": {"c": 1.0}})"), IoError);
    CHECK_THROWS_AS(mass_from_string(R"({"frame": ["a","b"], "masses": {"a|a": 1.0}})"), IoError);
    CHECK_THROWS_AS(mass_from_string(R"({"frame": ["a","b"], "masses": {"a": "x"}})"), IoError);
    // unnormalized content fails the constructor, not the parser
    CHECK_THROWS_AS(mass_from_string(R"({"frame": ["a","b"], "masses": {"a": 0.5}})"),
                    SumNotOneError);
}

TEST_CASE("extra fields are ignored") {
    const json doc = json::parse(
        R"({"frame": ["a","b"], "masses": {"a|b": 1.0}, "object": 7, "meta": {"k": 1}})");
    CHECK(mass_from_document(doc).is_vacuous());
}

TEST_CASE("focal keys parse in any label order") {
    const Frame frame({"a", "b", "c"});
    CHECK(focal_set_from_key(frame, "c|a") == 0b101);
    CHECK(focal_set_from_key(frame, "a|c") == 0b101);
    CHECK_THROWS_AS(focal_set_from_key(frame, ""), IoError);
}
