#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "stpipe/errors.hpp"
#include "stpipe/stream_io.hpp"

using namespace stpipe;

TEST_CASE("single record parses with all fields") {
    const auto events = parse_stream("0\t0\t她说\n");
    REQUIRE(events.size() == 1);
    CHECK(events[0].utt_id == "0");
    CHECK(events[0].token.surface == "她说");
    CHECK(events[0].token.ts_ms == 0);
    CHECK(events[0].token.index == 0);
}

TEST_CASE("non-monotone timestamps are a format error") {
    CHECK_THROWS_AS(parse_stream("u\t100\ta\nu\t50\tb\n"), DataError);
}

TEST_CASE("malformed records are rejected") {
    CHECK_THROWS_AS(parse_stream("u\t0\t\n"), DataError);     // empty token
    CHECK_THROWS_AS(parse_stream("u\t0\n"), DataError);       // missing field
    CHECK_THROWS_AS(parse_stream("u\tx\ta\n"), DataError);    // bad ts
    CHECK_THROWS_AS(parse_stream("u\t0\ta b\n"), DataError);  // whitespace in token
    CHECK_THROWS_AS(parse_stream("\t0\ta\n"), DataError);     // empty utt id
    CHECK_THROWS_AS(parse_stream("u\t0\ta\tb\n"), DataError); // extra field
}

TEST_CASE("four-line fixture yields indices 0..3") {
    const auto events = parse_stream_file(testutil::testdata("stream_small.txt"));
    REQUIRE(events.size() == 4);
    const std::vector<std::string> expected = {"她说", "我", "错了", "。"};
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(events[i].utt_id == "u1");
        CHECK(events[i].token.index == i);
        CHECK(events[i].token.ts_ms == static_cast<std::int64_t>(i) * 300);
        CHECK(events[i].token.surface == expected[i]);
    }
}

TEST_CASE("serialize(parse(file)) reproduces the fixture bytes") {
    const std::string content = read_file(testutil::testdata("stream_small.txt"));
    CHECK(serialize_stream(parse_stream(content)) == content);
}

TEST_CASE("random streams round-trip through serialize/parse") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<StreamEvent> events;
        std::int64_t ts = 0;
        std::uniform_int_distribution<int> utts(1, 3);
        std::uniform_int_distribution<int> lens(1, 8);
        const int n_utts = utts(rng);
        std::size_t index = 0;
        for (int u = 0; u < n_utts; ++u) {
            const int len = lens(rng);
            for (int i = 0; i < len; ++i) {
                ts += lens(rng);
                events.push_back({"utt" + std::to_string(u), {"tok" + std::to_string(i), ts, index++}});
            }
        }
        const auto reparsed = parse_stream(serialize_stream(events));
        CHECK(reparsed == events);
    }
}

TEST_CASE("grouping keeps order and rejects interleaved utterances") {
    const auto utts = group_by_utterance(parse_stream("a\t0\tx\na\t1\ty\nb\t2\tz\n"));
    REQUIRE(utts.size() == 2);
    CHECK(utts[0].id == "a");
    CHECK(utts[0].tokens.size() == 2);
    CHECK(utts[1].id == "b");

    CHECK_THROWS_AS(group_by_utterance(parse_stream("a\t0\tx\nb\t1\ty\na\t2\tz\n")), DataError);
}
