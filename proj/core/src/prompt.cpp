#include "simt/prompt.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "simt/errors.hpp"

namespace simt {

namespace {

std::string fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    return buf;
}

std::string action_definition(Action action) {
    switch (action) {
        case Action::Read:
            return "READ: Wait for the next source word (default).";
        case Action::Write:
            return "WRITE: Output a target word or phrase.";
        case Action::Drop:
            return "DROP: Remove previously read word(s) when they are meaningless fillers "
                   "(e.g. \"uh\", \"um\"), repetitions, false starts, or self-corrections. "
                   "Use only when clearly justified.";
        case Action::PartialSummarization:
            return "PARTIAL_SUMMARIZATION: Merge or simplify redundant or equivalent "
                   "expressions while preserving the meaning and tone (e.g. politeness, "
                   "speculation).";
        case Action::Cut:
            return "CUT: Split the sentence into two shorter, independently translatable "
                   "units. Use only when the sentence is long or syntactically complex.";
        case Action::Pronominalization:
            return "PRONOUN: Replace a repeated noun phrase with a pronoun ONLY IF the "
                   "referent is unambiguous.";
    }
    return "";
}

// Canonical rendering order for the extended actions.
std::vector<Action> ordered_allowed(const PromptSpec& spec) {
    std::vector<Action> out;
    for (Action action : extended_actions()) {
        if (std::find(spec.allowed_actions.begin(), spec.allowed_actions.end(), action) !=
            spec.allowed_actions.end()) {
            out.push_back(action);
        }
    }
    return out;
}

} // namespace

std::string format_stats_line(Action action, const ActionStatLine& line) {
    return action_prompt_name(action) + " \xE2\x86\x92 AL \xE2\x89\x88 " +
           fixed(line.al_seconds, 3) + "s, BLEU \xE2\x89\x88 " + fixed(line.bleu, 2);
}

std::string render_prompt(const PromptSpec& spec, PromptMode mode) {
    const std::vector<Action> allowed = ordered_allowed(spec);
    for (Action action : allowed) {
        if (!spec.stats.per_action.count(action)) {
            throw DataError("missing statistics for allowed action " +
                            action_prompt_name(action));
        }
    }

    std::ostringstream out;
    out << "You are a simultaneous translation (" << spec.source_lang << "-"
        << spec.target_lang << ") agent. Read the source sentence word by word and decide "
        << "what action to take at each step to balance translation quality and latency. "
        << "Keep to the original meaning and word order of the sentence when translating.\n";

    out << "You can choose from the following actions:\n";
    out << "- " << action_definition(Action::Read) << "\n";
    out << "- " << action_definition(Action::Write) << "\n";
    for (Action action : allowed) {
        out << "- " << action_definition(action) << "\n";
    }

    if (!allowed.empty()) {
        out << "Keep to the original word order and meaning, and use the extra actions only "
            << "when they considerably improve the latency or quality of the "
            << "interpretation. Based on dev set evaluation:\n";
        for (Action action : allowed) {
            out << "- " << format_stats_line(action, spec.stats.per_action.at(action)) << "\n";
        }
        out << "Only use ";
        for (std::size_t i = 0; i < allowed.size(); ++i) {
            if (i > 0) out << (i + 1 == allowed.size() ? ", or " : ", ");
            out << action_prompt_name(allowed[i]);
        }
        out << " if they reduce latency without hurting translation quality.\n";
    }

    if (!spec.demonstrations.empty()) {
        out << "Examples of the expected interpretation style:\n";
        for (const auto& [src, tgt] : spec.demonstrations) {
            out << "Source: " << src << "\n";
            out << "Target: " << tgt << "\n";
        }
    }

    if (!spec.constraint_block.empty()) {
        out << spec.constraint_block << "\n";
    }

    out << "---\n";
    if (mode == PromptMode::SingleShot) {
        out << "You will receive the full source sentence. Your job is:\n"
            << "1. Simulate the step-by-step translation process internally;\n"
            << "2. Choose the action to take at each step strictly based on the statistics "
               "provided above;\n"
            << "3. Reply with one JSON object of the form {\"steps\": [{\"i\": 1, \"src\": "
               "\"...\", \"action\": \"...\", \"out\": \"...\"}, ...], \"final\": \"...\"} "
               "listing every step, the action chosen, the incremental output when the "
               "action emits one, and the full translation.\n"
            << "You are given only the prefix of the source. DO NOT use any information "
               "beyond the current prefix.\n";
    } else {
        out << "You will receive a word at one time. At each step, reply with one JSON "
               "object of the form {\"action\": \"...\", \"out\": \"...\"} naming the "
               "action you chose and the incremental translation; omit \"out\" for actions "
               "that yield no translation.\n"
            << "When told that the sentence is complete, reply with {\"final\": \"...\"} "
               "holding the whole sentence built from your previous incremental "
               "translations.\n"
            << "You are not allowed to modify or overwrite your previous output, only "
               "incremental translations are allowed.\n"
            << "DO NOT use any information beyond the words received so far.\n";
    }
    out << "If you find yourself relying on unseen future words, output the token "
        << kViolationSentinel << " and stop.";
    return out.str();
}

} // namespace simt
