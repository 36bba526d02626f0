#include "doctest.h"

#include <filesystem>

#include "simt/errors.hpp"
#include "simt/prompt.hpp"

using namespace simt;

namespace {

const std::filesystem::path kData = SIMT_DATA_DIR;

PromptSpec full_spec() {
    PromptSpec spec;
    spec.allowed_actions = extended_actions();
    spec.stats = load_action_stats(kData / "stats" / "dev_en_zh.json");
    return spec;
}

} // namespace

TEST_CASE("the en-zh prompt embeds the dev-set statistics lines verbatim") {
    const std::string prompt = render_prompt(full_spec(), PromptMode::SingleShot);
    CHECK(prompt.find("DROP → AL ≈ 0.851s, BLEU ≈ 58.94") != std::string::npos);
    CHECK(prompt.find("PARTIAL_SUMMARIZATION → AL ≈ 0.847s, BLEU ≈ 60.33") !=
          std::string::npos);
    CHECK(prompt.find("CUT → AL ≈ 0.824s, BLEU ≈ 60.28") != std::string::npos);
    CHECK(prompt.find("PRONOUN → AL ≈ 0.858s, BLEU ≈ 60.85") != std::string::npos);
}

TEST_CASE("read/write-only prompts carry no stats block or extended definitions") {
    PromptSpec spec; // no allowed extended actions
    const std::string prompt = render_prompt(spec, PromptMode::SingleShot);
    CHECK(prompt.find("Based on dev set evaluation") == std::string::npos);
    CHECK(prompt.find("DROP") == std::string::npos);
    CHECK(prompt.find("PRONOUN") == std::string::npos);
    CHECK(prompt.find("READ: Wait for the next source word") != std::string::npos);
    CHECK(prompt.find("WRITE: Output a target word or phrase") != std::string::npos);
}

TEST_CASE("rendering is deterministic") {
    const auto spec = full_spec();
    CHECK(render_prompt(spec, PromptMode::PrefixFeed) ==
          render_prompt(spec, PromptMode::PrefixFeed));
    CHECK(render_prompt(spec, PromptMode::SingleShot) ==
          render_prompt(spec, PromptMode::SingleShot));
}

TEST_CASE("missing statistics for an allowed action is an error") {
    PromptSpec spec;
    spec.allowed_actions = {Action::Cut};
    CHECK_THROWS_AS(render_prompt(spec, PromptMode::SingleShot), DataError);
}

TEST_CASE("both modes carry the violation sentinel; prefix mode the immutability clause") {
    const auto spec = full_spec();
    const std::string single = render_prompt(spec, PromptMode::SingleShot);
    const std::string prefix = render_prompt(spec, PromptMode::PrefixFeed);
    CHECK(single.find(kViolationSentinel) != std::string::npos);
    CHECK(prefix.find(kViolationSentinel) != std::string::npos);
    CHECK(prefix.find("only incremental translations are allowed") != std::string::npos);
    CHECK(prefix.find("a word at one time") != std::string::npos);
    CHECK(single.find("full source sentence") != std::string::npos);
}

TEST_CASE("stats lines format at fixed precision") {
    CHECK(format_stats_line(Action::Drop, {0.8, 60.0}) ==
          "DROP → AL ≈ 0.800s, BLEU ≈ 60.00");
}

TEST_CASE("demonstrations and the constraint block are rendered in order") {
    auto spec = full_spec();
    spec.demonstrations = {{"hello world", "你好世界"}};
    spec.constraint_block = "Never translate proper names.";
    const std::string prompt = render_prompt(spec, PromptMode::PrefixFeed);
    const auto src = prompt.find("Source: hello world");
    const auto tgt = prompt.find("Target: 你好世界");
    const auto constraint = prompt.find("Never translate proper names.");
    CHECK(src != std::string::npos);
    CHECK(tgt != std::string::npos);
    CHECK(constraint != std::string::npos);
    CHECK(src < tgt);
    CHECK(tgt < constraint);
}
