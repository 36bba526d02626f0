#include "simt/prefix_feed.hpp"

#include <optional>
#include <sstream>

#include "simt/errors.hpp"

namespace simt {

namespace {

struct StepReply {
    std::optional<Action> action;
    std::optional<std::string> out;
    std::optional<std::string> why;
    std::optional<std::string> claimed_total; // model's view of the full output so far
    std::optional<std::string> final_text;
};

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

// Lenient fallback for models without structured output: scans for
// "action: X" and "output:/out: ..." lines.
StepReply parse_loose(const std::string& content) {
    StepReply reply;
    std::istringstream ss(content);
    std::string line;
    while (std::getline(ss, line)) {
        const std::string lowered = [&] {
            std::string l = line;
            for (auto& c : l) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            return l;
        }();
        auto value_after = [&](std::size_t colon) { return trim(line.substr(colon + 1)); };
        if (lowered.rfind("action", 0) == 0) {
            const auto colon = line.find(':');
            if (colon != std::string::npos) {
                try {
                    reply.action = parse_action(value_after(colon));
                } catch (const DataError&) {
                }
            }
        } else if (lowered.rfind("output", 0) == 0 || lowered.rfind("out", 0) == 0) {
            const auto colon = line.find(':');
            if (colon != std::string::npos) reply.out = value_after(colon);
        } else if (lowered.rfind("final", 0) == 0) {
            const auto colon = line.find(':');
            if (colon != std::string::npos) reply.final_text = value_after(colon);
        }
    }
    return reply;
}

StepReply parse_reply(const std::string& content) {
    try {
        const json j = json::parse(content);
        StepReply reply;
        if (j.contains("action") && j.at("action").is_string()) {
            reply.action = parse_action(j.at("action").get<std::string>());
        }
        if (j.contains("out") && j.at("out").is_string()) {
            reply.out = j.at("out").get<std::string>();
        }
        if (j.contains("why") && j.at("why").is_string()) {
            reply.why = j.at("why").get<std::string>();
        }
        if (j.contains("translation_so_far") && j.at("translation_so_far").is_string()) {
            reply.claimed_total = j.at("translation_so_far").get<std::string>();
        }
        if (j.contains("final") && j.at("final").is_string()) {
            reply.final_text = j.at("final").get<std::string>();
        }
        return reply;
    } catch (const json::exception&) {
        return parse_loose(content);
    } catch (const DataError&) {
        return parse_loose(content);
    }
}

json build_request(const InferenceConfig& config, const json& messages) {
    return {{"model", config.model},
            {"messages", messages},
            {"temperature", config.temperature},
            {"top_p", config.top_p},
            {"seed", config.seed},
            {"max_tokens", config.max_tokens},
            {"response_format", {{"type", "json_object"}}}};
}

} // namespace

std::string feed_status_name(FeedStatus status) {
    switch (status) {
        case FeedStatus::Ok: return "ok";
        case FeedStatus::Violation: return "violation";
        case FeedStatus::Sentinel: return "violation-sentinel";
        case FeedStatus::ProtocolError: return "protocol-error";
    }
    return "?";
}

PrefixFeedOutcome run_prefix_feed(const std::string& sentence_id,
                                  const std::vector<std::string>& sentence_words,
                                  const PromptSpec& spec, const InferenceConfig& config,
                                  ChatClient& client, LangProfile profile) {
    if (sentence_words.empty()) throw DataError("prefix feed needs a non-empty sentence");

    PrefixFeedOutcome outcome;
    outcome.trace.sentence_id = sentence_id;

    json messages = json::array();
    messages.push_back({{"role", "system"},
                        {"content", render_prompt(spec, PromptMode::PrefixFeed)}});

    std::vector<std::string> fragments;
    auto fail = [&](FeedStatus status, int step, std::string detail) {
        outcome.status = status;
        outcome.offending_step = step;
        outcome.detail = std::move(detail);
        outcome.trace.final_translation = join_fragments(fragments, profile);
        return outcome;
    };

    for (std::size_t i = 0; i < sentence_words.size(); ++i) {
        const int t = static_cast<int>(i) + 1;
        messages.push_back({{"role", "user"}, {"content", sentence_words[i]}});
        const json response = client.complete(build_request(config, messages));

        std::string content;
        try {
            content = response_content(response);
        } catch (const DataError& e) {
            return fail(FeedStatus::ProtocolError, t, e.what());
        }
        if (content.find(kViolationSentinel) != std::string::npos) {
            return fail(FeedStatus::Sentinel, t, "model emitted the violation sentinel");
        }

        const StepReply reply = parse_reply(content);
        if (!reply.action) {
            return fail(FeedStatus::ProtocolError, t,
                        "no action could be parsed from: " + content);
        }

        ActionStep step;
        step.step_index = t;
        step.source_word = sentence_words[i];
        step.action = *reply.action;
        step.explanation = reply.why;
        if (is_emitting(*reply.action)) {
            if (!reply.out || reply.out->empty()) {
                return fail(FeedStatus::ProtocolError, t,
                            action_name(*reply.action) + " step came without output");
            }
            step.output_fragment = reply.out;
        }
        outcome.trace.steps.push_back(step);

        if (step.output_fragment) fragments.push_back(*step.output_fragment);
        if (reply.claimed_total &&
            *reply.claimed_total != join_fragments(fragments, profile)) {
            return fail(FeedStatus::Violation, t,
                        "step " + std::to_string(t) +
                            " rewrote previously emitted output (immutability contract)");
        }

        messages.push_back({{"role", "assistant"}, {"content", content}});
    }

    messages.push_back({{"role", "user"},
                        {"content", "The sentence is complete. Output the full translation."}});
    const json response = client.complete(build_request(config, messages));
    std::string content;
    try {
        content = response_content(response);
    } catch (const DataError& e) {
        return fail(FeedStatus::ProtocolError,
                    static_cast<int>(sentence_words.size()), e.what());
    }
    if (content.find(kViolationSentinel) != std::string::npos) {
        return fail(FeedStatus::Sentinel, static_cast<int>(sentence_words.size()),
                    "model emitted the violation sentinel at finalization");
    }
    const StepReply reply = parse_reply(content);
    const std::string assembled = join_fragments(fragments, profile);
    const std::string final_text = reply.final_text.value_or(trim(content));
    outcome.trace.final_translation = final_text;
    if (final_text != assembled) {
        outcome.status = FeedStatus::Violation;
        outcome.offending_step = static_cast<int>(sentence_words.size());
        outcome.detail = "final translation differs from the fragment concatenation";
    }
    return outcome;
}

} // namespace simt
