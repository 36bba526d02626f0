#include "simt/chat_client.hpp"

#include <chrono>
#include <cstdlib>
#include <thread>

#include "httplib.h"

#include "simt/errors.hpp"

namespace simt {

json InferenceConfig::to_json() const {
    return {{"base_url", base_url},   {"model", model},
            {"temperature", temperature}, {"top_p", top_p},
            {"seed", seed},           {"max_tokens", max_tokens},
            {"max_attempts", max_attempts}, {"backoff_ms", backoff_ms}};
}

std::string response_content(const json& response_body) {
    try {
        return response_body.at("choices").at(0).at("message").at("content")
            .get<std::string>();
    } catch (const json::exception&) {
        throw DataError("response carries no choices[0].message.content: " +
                        response_body.dump());
    }
}

json make_response_body(const std::string& content) {
    return {{"choices", json::array({json{{"message", {{"role", "assistant"},
                                                       {"content", content}}}}})}};
}

HttpChatClient::HttpChatClient(InferenceConfig config) : config_(std::move(config)) {}

json HttpChatClient::complete(const json& request_body) {
    std::string last_error;
    int backoff = config_.backoff_ms;
    for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
        if (attempt > 1) {
            std::this_thread::sleep_for(std::chrono::milliseconds(backoff));
            backoff *= 2;
        }
        httplib::Client client(config_.base_url);
        client.set_read_timeout(120, 0);
        httplib::Headers headers;
        if (const char* key = std::getenv("SIMT_API_KEY")) {
            headers.emplace("Authorization", std::string("Bearer ") + key);
        }
        auto res = client.Post("/v1/chat/completions", headers, request_body.dump(),
                               "application/json");
        if (!res) {
            last_error = "transport error: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status >= 500) {
            last_error = "server error: HTTP " + std::to_string(res->status);
            continue;
        }
        if (res->status != 200) {
            throw EndpointError("endpoint rejected request: HTTP " +
                                std::to_string(res->status) + " " + res->body);
        }
        try {
            return json::parse(res->body);
        } catch (const json::exception& e) {
            throw EndpointError(std::string("endpoint returned invalid JSON: ") + e.what());
        }
    }
    throw EndpointError("endpoint unreachable after " + std::to_string(config_.max_attempts) +
                        " attempts: " + last_error);
}

json RecordingChatClient::complete(const json& request_body) {
    json response = inner_.complete(request_body);
    log_.push_back({static_cast<int>(log_.size()), request_body, response});
    return response;
}

void RecordingChatClient::save(const std::filesystem::path& path) const {
    std::vector<json> records;
    records.reserve(log_.size());
    for (const auto& entry : log_) {
        records.push_back(
            {{"i", entry.index}, {"request", entry.request}, {"response", entry.response}});
    }
    write_jsonl(path, records);
}

ReplayChatClient ReplayChatClient::from_file(const std::filesystem::path& path) {
    return ReplayChatClient(load_exchange_log(path));
}

json ReplayChatClient::complete(const json& request_body) {
    if (next_ >= log_.size()) {
        throw EndpointError("replay log exhausted after " + std::to_string(log_.size()) +
                            " exchanges");
    }
    const auto& entry = log_[next_++];
    if (entry.request != request_body) {
        throw DataError("replay mismatch at exchange " + std::to_string(entry.index) +
                        ": request differs from the recorded one");
    }
    return entry.response;
}

std::vector<ExchangeRecord> load_exchange_log(const std::filesystem::path& path) {
    std::vector<ExchangeRecord> log;
    read_jsonl(path, [&](const json& record, int line_no) {
        try {
            log.push_back({record.at("i").get<int>(), record.at("request"),
                           record.at("response")});
        } catch (const json::exception& e) {
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": bad log record: " + e.what());
        }
    });
    return log;
}

} // namespace simt
