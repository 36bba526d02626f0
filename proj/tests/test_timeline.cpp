#include "doctest.h"

#include "simt/errors.hpp"
#include "simt/timeline.hpp"

#include "support/generators.hpp"

using namespace simt;

namespace {

SourceTimeline two_words() {
    return SourceTimeline("s", {{"a", 0.0, 1.0}, {"b", 1.0, 2.0}});
}

} // namespace

TEST_CASE("time_at_index clamps below the first word") {
    CHECK(time_at_index(0.5, two_words()) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("time_at_index interpolates linearly between end times") {
    CHECK(time_at_index(1.5, two_words()) == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("time_at_index clamps above the last word") {
    CHECK(time_at_index(7.0, two_words()) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("time_at_index rejects an empty timeline") {
    CHECK_THROWS_AS(time_at_index(1.0, SourceTimeline()), DataError);
}

TEST_CASE("time_at_index is exact at integer indexes and monotone in x") {
    simt_test::Gen gen(101);
    for (int it = 0; it < 200; ++it) {
        const auto tl = gen.timeline("s", 1, 9);
        for (int j = 1; j <= static_cast<int>(tl.size()); ++j) {
            CHECK(time_at_index(static_cast<double>(j), tl) == tl.end_time(j));
        }
        double prev_x = gen.uniform(-2.0, 2.0);
        double prev_t = time_at_index(prev_x, tl);
        for (int k = 0; k < 20; ++k) {
            const double x = prev_x + gen.uniform(0.0, 2.0);
            const double t = time_at_index(x, tl);
            CHECK(t >= prev_t - 1e-12);
            CHECK(t >= tl.end_time(1) - 1e-12);
            CHECK(t <= tl.end_time(static_cast<int>(tl.size())) + 1e-12);
            prev_x = x;
            prev_t = t;
        }
    }
}

TEST_CASE("timeline construction validates intervals") {
    CHECK_THROWS_AS(SourceTimeline("s", {{"a", 1.0, 0.5}}), DataError);
    CHECK_THROWS_AS(SourceTimeline("s", {{"a", -0.1, 0.5}}), DataError);
    // zero-duration words are allowed
    CHECK_NOTHROW(SourceTimeline("s", {{"a", 0.5, 0.5}, {"b", 0.5, 0.5}}));
}

TEST_CASE("timeline parser rejects non-monotone ends with the line number") {
    const json bad = {{"id", "x"},
                      {"words", json::array({json{{"w", "a"}, {"start", 0.0}, {"end", 2.0}},
                                             json{{"w", "b"}, {"start", 0.5}, {"end", 1.0}}})}};
    try {
        parse_timeline(bad, 7);
        FAIL("expected DataError");
    } catch (const DataError& e) {
        const std::string what = e.what();
        CHECK(what.find("line 7") != std::string::npos);
        CHECK(what.find("non-monotone") != std::string::npos);
    }
}

TEST_CASE("timeline json round-trip") {
    const auto tl = two_words();
    const auto back = parse_timeline(timeline_to_json(tl));
    REQUIRE(back.size() == tl.size());
    CHECK(back.word(2).surface == "b");
    CHECK(back.end_time(2) == 2.0);
}

TEST_CASE("emissions parser enforces non-decreasing onsets") {
    CHECK_THROWS_AS(parse_emissions({{"id", "x"}, {"onsets", {2.0, 1.0}}}), DataError);
    const auto em = parse_emissions({{"id", "x"}, {"unit", "word"}, {"onsets", {1.0, 1.0, 2.5}}});
    CHECK(em.unit == TargetEmissions::Unit::Word);
    CHECK(em.size() == 3);
}
