#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "simt/actions.hpp"

namespace simt {

// Token a model must emit (and stop) if it catches itself using source words
// beyond the prefix it was given.
inline constexpr std::string_view kViolationSentinel = "<VIOLATION>";

// Everything needed to render a deterministic instruction prompt: which
// extended actions are allowed, the dev-set statistics injected per action,
// optional demonstrations, and an optional extra constraint block.
struct PromptSpec {
    std::string template_id = "simt-step-v1";
    std::string source_lang = "en";
    std::string target_lang = "zh";
    std::vector<Action> allowed_actions; // subset of the extended actions
    ActionStats stats;
    std::vector<std::pair<std::string, std::string>> demonstrations; // (src, tgt)
    std::string constraint_block;
};

enum class PromptMode {
    SingleShot, // whole sentence in one request
    PrefixFeed, // one word per request, immutable-output contract
};

// "DROP → AL ≈ 0.851s, BLEU ≈ 58.94"
std::string format_stats_line(Action action, const ActionStatLine& line);

// Deterministic prompt text: action definitions for exactly the allowed set,
// the per-action statistics block, the word-order constraint, output-format
// instructions, and (in prefix-feed mode) the immutability clause. Both
// modes carry the violation-sentinel instruction. Throws DataError when an
// allowed action has no statistics entry.
std::string render_prompt(const PromptSpec& spec, PromptMode mode);

} // namespace simt
