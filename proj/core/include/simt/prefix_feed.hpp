#pragma once

#include <string>
#include <vector>

#include "simt/actions.hpp"
#include "simt/chat_client.hpp"
#include "simt/lang.hpp"
#include "simt/prompt.hpp"

namespace simt {

enum class FeedStatus {
    Ok,
    Violation,     // immutable-output contract broken (earlier output rewritten)
    Sentinel,      // model emitted the violation sentinel
    ProtocolError, // response could not be parsed into a step
};

std::string feed_status_name(FeedStatus status);

// Result of one prefix-fed sentence. On failure the steps taken before the
// offending one are preserved in the trace.
struct PrefixFeedOutcome {
    ActionTrace trace;
    FeedStatus status = FeedStatus::Ok;
    int offending_step = 0; // 1-based; 0 when ok
    std::string detail;

    bool ok() const { return status == FeedStatus::Ok; }
};

// Feeds the sentence one word per request over an accumulating chat
// conversation, so the request at step t contains exactly words 1..t. Each
// response is parsed into an ActionStep (strict step-JSON first, a lenient
// "action:"/"output:" line parser as fallback); the accumulated fragments
// are checked for prefix-monotonicity after every step; a final request asks
// for the whole translation, which must equal the fragment concatenation.
PrefixFeedOutcome run_prefix_feed(const std::string& sentence_id,
                                  const std::vector<std::string>& sentence_words,
                                  const PromptSpec& spec, const InferenceConfig& config,
                                  ChatClient& client, LangProfile profile);

} // namespace simt
