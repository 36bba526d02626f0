#include "doctest.h"

#include <atomic>
#include <filesystem>
#include <thread>

#include "httplib.h"

#include "simt/errors.hpp"
#include "simt/prefix_feed.hpp"

#include "support/mock_clients.hpp"

using namespace simt;
using namespace simt_test;

namespace {

const std::filesystem::path kData = SIMT_DATA_DIR;

PromptSpec zh_spec() {
    PromptSpec spec;
    spec.allowed_actions = extended_actions();
    spec.stats = load_action_stats(kData / "stats" / "dev_en_zh.json");
    return spec;
}

const InferenceConfig kConfig{};

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

} // namespace

TEST_CASE("playing back the demo decision table yields its trace and translation") {
    const auto traces = load_traces(kData / "traces" / "leave_one_out.jsonl");
    REQUIRE(traces.size() == 1);
    TracePlaybackMock mock(traces[0], LangProfile::CharacterZh);
    const auto outcome =
        run_prefix_feed("leave_one_out", traces[0].source_words(), zh_spec(), kConfig, mock,
                        LangProfile::CharacterZh);
    REQUIRE(outcome.ok());
    CHECK(outcome.trace.final_translation ==
          "我们将实验设计为留一法评估,其中我们在十六个数据集上训练FeSTe,并将其应用于第十七个数据集。");
    CHECK(validate_trace(outcome.trace, traces[0].source_words(), LangProfile::CharacterZh)
              .ok());
    CHECK(outcome.trace.steps[8].action == Action::Drop);
    CHECK(outcome.trace.steps[19].action == Action::Pronominalization);
}

TEST_CASE("rewriting earlier output fails the run at the offending step") {
    RewritingMock mock(LangProfile::SpaceTokenized, 3);
    const auto outcome = run_prefix_feed("s", {"w1", "w2", "w3", "w4"}, zh_spec(), kConfig,
                                         mock, LangProfile::SpaceTokenized);
    CHECK(outcome.status == FeedStatus::Violation);
    CHECK(outcome.offending_step == 3);
    CHECK(outcome.trace.steps.size() == 3); // steps up to the violation are preserved
}

TEST_CASE("the violation sentinel aborts the run and keeps earlier steps") {
    SentinelMock mock(5);
    const auto outcome = run_prefix_feed("s", {"w1", "w2", "w3", "w4", "w5", "w6"}, zh_spec(),
                                         kConfig, mock, LangProfile::SpaceTokenized);
    CHECK(outcome.status == FeedStatus::Sentinel);
    CHECK(outcome.offending_step == 5);
    CHECK(outcome.trace.steps.size() == 4);
    CHECK(feed_status_name(outcome.status) == "violation-sentinel");
}

TEST_CASE("unparseable replies are recorded as protocol errors") {
    ScriptedChatClient mock([](const json&, int) {
        return make_response_body("no structured content here");
    });
    const auto outcome = run_prefix_feed("s", {"w1", "w2"}, zh_spec(), kConfig, mock,
                                         LangProfile::SpaceTokenized);
    CHECK(outcome.status == FeedStatus::ProtocolError);
    CHECK(outcome.offending_step == 1);
}

TEST_CASE("the request at step t contains exactly the first t words") {
    EchoWriteMock inner(LangProfile::SpaceTokenized);
    RecordingChatClient recorder(inner);
    const std::vector<std::string> words = {"kilo0101", "lima0102", "mike0103", "november0104"};
    const auto outcome =
        run_prefix_feed("s", words, zh_spec(), kConfig, recorder, LangProfile::SpaceTokenized);
    REQUIRE(outcome.ok());
    REQUIRE(recorder.log().size() == words.size() + 1); // word steps + finalization

    for (std::size_t t = 1; t <= words.size(); ++t) {
        const auto users = user_contents(recorder.log()[t - 1].request);
        REQUIRE(users.size() == t);
        std::string joined;
        for (const auto& u : users) joined += u + " ";
        for (std::size_t j = 0; j < words.size(); ++j) {
            const bool present = joined.find(words[j]) != std::string::npos;
            CHECK(present == (j < t));
        }
    }
}

TEST_CASE("a recorded run replays into the identical trace") {
    const auto log_path = temp_file("simt_prefix_replay_test.jsonl");
    const std::vector<std::string> words = {"oscar0201", "papa0202", "quebec0203"};

    json first_trace;
    {
        EchoWriteMock inner(LangProfile::SpaceTokenized);
        RecordingChatClient recorder(inner);
        const auto outcome = run_prefix_feed("s", words, zh_spec(), kConfig, recorder,
                                             LangProfile::SpaceTokenized);
        REQUIRE(outcome.ok());
        recorder.save(log_path);
        first_trace = trace_to_json(outcome.trace);
    }
    {
        auto replay = ReplayChatClient::from_file(log_path);
        const auto outcome = run_prefix_feed("s", words, zh_spec(), kConfig, replay,
                                             LangProfile::SpaceTokenized);
        REQUIRE(outcome.ok());
        CHECK(trace_to_json(outcome.trace) == first_trace);
    }
    std::filesystem::remove(log_path);
}

TEST_CASE("replay refuses requests that differ from the recorded ones") {
    std::vector<ExchangeRecord> log;
    log.push_back({0, json{{"model", "m"}, {"messages", json::array()}},
                   make_response_body(json{{"action", "READ"}}.dump())});
    ReplayChatClient replay(log);
    CHECK_THROWS_AS(replay.complete(json{{"model", "other"}}), DataError);
}

TEST_CASE("http client retries transient failures and honors hard rejections") {
    httplib::Server server;
    std::atomic<int> calls{0};
    server.Post("/v1/chat/completions", [&](const httplib::Request&, httplib::Response& res) {
        const int n = ++calls;
        if (n <= 2) {
            res.status = 503;
            return;
        }
        res.set_content(make_response_body(json{{"action", "READ"}}.dump()).dump(),
                        "application/json");
    });
    const int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread serve([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    InferenceConfig config;
    config.base_url = "http://127.0.0.1:" + std::to_string(port);
    config.backoff_ms = 1;
    HttpChatClient client(config);
    const json reply = client.complete({{"model", "m"}, {"messages", json::array()}});
    CHECK(response_content(reply) == json{{"action", "READ"}}.dump());
    CHECK(calls.load() == 3);

    // 4xx is surfaced without retries
    httplib::Server reject;
    std::atomic<int> reject_calls{0};
    reject.Post("/v1/chat/completions", [&](const httplib::Request&, httplib::Response& res) {
        ++reject_calls;
        res.status = 404;
    });
    const int reject_port = reject.bind_to_any_port("127.0.0.1");
    std::thread serve_reject([&] { reject.listen_after_bind(); });
    reject.wait_until_ready();
    InferenceConfig reject_config;
    reject_config.base_url = "http://127.0.0.1:" + std::to_string(reject_port);
    HttpChatClient reject_client(reject_config);
    CHECK_THROWS_AS(reject_client.complete({{"model", "m"}}), EndpointError);
    CHECK(reject_calls.load() == 1);

    server.stop();
    reject.stop();
    serve.join();
    serve_reject.join();
}

TEST_CASE("unreachable endpoints surface after the retry budget") {
    InferenceConfig config;
    config.base_url = "http://127.0.0.1:1"; // nothing listens here
    config.backoff_ms = 1;
    HttpChatClient client(config);
    CHECK_THROWS_AS(client.complete({{"model", "m"}}), EndpointError);
}
