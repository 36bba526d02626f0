#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "simt/jsonl.hpp"

namespace simt {

// Decoding and transport settings for a chat-completion endpoint, fixed per
// run and echoed into report headers.
struct InferenceConfig {
    std::string base_url = "http://127.0.0.1:8080";
    std::string model = "qwen3-8b";
    double temperature = 0.0;
    double top_p = 1.0;
    int seed = 17;
    int max_tokens = 1024;
    int max_attempts = 3;   // transport retries only
    int backoff_ms = 50;    // doubled after each failed attempt

    json to_json() const;
};

// One chat-completion round trip. Implementations throw EndpointError on
// transport failure; model content is returned as-is and never retried.
class ChatClient {
public:
    virtual ~ChatClient() = default;
    virtual json complete(const json& request_body) = 0;
};

// Extracts choices[0].message.content; throws DataError when missing.
std::string response_content(const json& response_body);

// Wraps a response text in the chat-completion envelope (for mocks and logs).
json make_response_body(const std::string& content);

// POSTs to {base_url}/v1/chat/completions with the credential from the
// SIMT_API_KEY environment variable (when set). Retries transport errors and
// 5xx statuses with exponential backoff, then surfaces EndpointError.
class HttpChatClient : public ChatClient {
public:
    explicit HttpChatClient(InferenceConfig config);
    json complete(const json& request_body) override;

private:
    InferenceConfig config_;
};

// Serves canned behavior for tests and offline runs.
class ScriptedChatClient : public ChatClient {
public:
    using Handler = std::function<json(const json& request_body, int index)>;
    explicit ScriptedChatClient(Handler handler) : handler_(std::move(handler)) {}
    json complete(const json& request_body) override {
        return handler_(request_body, index_++);
    }

private:
    Handler handler_;
    int index_ = 0;
};

struct ExchangeRecord {
    int index = 0;
    json request;
    json response;
};

// Passes through to an inner client while logging every exchange; the log
// replays a run offline and byte-identically.
class RecordingChatClient : public ChatClient {
public:
    explicit RecordingChatClient(ChatClient& inner) : inner_(inner) {}
    json complete(const json& request_body) override;

    const std::vector<ExchangeRecord>& log() const { return log_; }
    void save(const std::filesystem::path& path) const;

private:
    ChatClient& inner_;
    std::vector<ExchangeRecord> log_;
};

// Serves a recorded log in order, verifying each incoming request matches
// the recorded one so replays cannot silently diverge.
class ReplayChatClient : public ChatClient {
public:
    explicit ReplayChatClient(std::vector<ExchangeRecord> log) : log_(std::move(log)) {}
    static ReplayChatClient from_file(const std::filesystem::path& path);
    json complete(const json& request_body) override;

private:
    std::vector<ExchangeRecord> log_;
    std::size_t next_ = 0;
};

std::vector<ExchangeRecord> load_exchange_log(const std::filesystem::path& path);

} // namespace simt
