#include "simt/actions.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

#include "simt/errors.hpp"

namespace simt {

Action parse_action(const std::string& name) {
    if (name == "READ") return Action::Read;
    if (name == "WRITE") return Action::Write;
    if (name == "DROP") return Action::Drop;
    if (name == "CUT" || name == "SENTENCE_CUT") return Action::Cut;
    if (name == "PARTIAL_SUMMARIZATION") return Action::PartialSummarization;
    if (name == "PRONOUN" || name == "PRONOMINALIZATION") return Action::Pronominalization;
    throw DataError("unknown action: '" + name + "'");
}

std::string action_name(Action action) {
    switch (action) {
        case Action::Read: return "READ";
        case Action::Write: return "WRITE";
        case Action::Drop: return "DROP";
        case Action::Cut: return "CUT";
        case Action::PartialSummarization: return "PARTIAL_SUMMARIZATION";
        case Action::Pronominalization: return "PRONOMINALIZATION";
    }
    return "?";
}

std::string action_prompt_name(Action action) {
    if (action == Action::Pronominalization) return "PRONOUN";
    return action_name(action);
}

bool is_emitting(Action action) {
    return action == Action::Write || action == Action::Cut ||
           action == Action::PartialSummarization || action == Action::Pronominalization;
}

const std::vector<Action>& extended_actions() {
    static const std::vector<Action> kActions = {
        Action::Drop, Action::PartialSummarization, Action::Cut, Action::Pronominalization};
    return kActions;
}

std::vector<std::string> ActionTrace::source_words() const {
    std::vector<std::string> out;
    out.reserve(steps.size());
    for (const auto& s : steps) out.push_back(s.source_word);
    return out;
}

std::vector<std::string> ActionTrace::fragments() const {
    std::vector<std::string> out;
    for (const auto& s : steps) {
        if (is_emitting(s.action) && s.output_fragment) out.push_back(*s.output_fragment);
    }
    return out;
}

std::string Verdict::summary() const {
    if (ok()) return "ok";
    std::ostringstream ss;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i > 0) ss << "; ";
        ss << "step " << violations[i].step << " [" << violations[i].code << "] "
           << violations[i].message;
    }
    return ss.str();
}

Verdict validate_trace(const ActionTrace& trace,
                       const std::vector<std::string>& source_words, LangProfile profile) {
    Verdict verdict;
    auto flag = [&](int step, std::string code, std::string message) {
        verdict.violations.push_back({step, std::move(code), std::move(message)});
    };

    if (trace.steps.size() != source_words.size()) {
        flag(static_cast<int>(trace.steps.size()), "step-count-mismatch",
             "trace has " + std::to_string(trace.steps.size()) + " steps for " +
                 std::to_string(source_words.size()) + " source words");
    }

    std::set<int> dropped;
    std::vector<std::string> fragments_so_far;
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const auto& step = trace.steps[i];
        const int ordinal = static_cast<int>(i) + 1;

        if (step.step_index != ordinal) {
            flag(ordinal, "step-index-mismatch",
                 "step field says " + std::to_string(step.step_index) + ", position is " +
                     std::to_string(ordinal));
        }
        if (i < source_words.size() && step.source_word != source_words[i]) {
            flag(ordinal, "source-word-mismatch",
                 "step consumes \"" + step.source_word + "\" but source has \"" +
                     source_words[i] + "\"");
        }

        const bool has_fragment = step.output_fragment && !step.output_fragment->empty();
        if (is_emitting(step.action)) {
            if (!has_fragment) {
                flag(ordinal, "missing-fragment",
                     action_name(step.action) + " without an output fragment");
            }
        } else if (step.output_fragment) {
            flag(ordinal,
                 step.action == Action::Read ? "fragment-on-read" : "fragment-on-drop",
                 action_name(step.action) + " must not carry an output fragment");
        }

        if (step.action != Action::Drop && !step.drop_targets.empty()) {
            flag(ordinal, "drop-targets-on-non-drop",
                 "only DROP steps may list dropped words");
        }
        for (int target : step.effective_drop_targets()) {
            if (target < 1 || target > ordinal) {
                flag(ordinal, "drop-target-unread",
                     "DROP targets step " + std::to_string(target) +
                         ", which has not been read yet");
            } else if (!dropped.insert(target).second) {
                flag(ordinal, "drop-target-duplicate",
                     "step " + std::to_string(target) + " dropped twice");
            }
        }

        if (has_fragment && is_emitting(step.action)) {
            fragments_so_far.push_back(*step.output_fragment);
            const std::string acc = join_fragments(fragments_so_far, profile);
            if (trace.final_translation.compare(0, acc.size(), acc) != 0) {
                flag(ordinal, "prefix-monotonicity",
                     "prefix-monotonicity broken at step " + std::to_string(ordinal) +
                         ": accumulated output is not a prefix of final_translation");
                fragments_so_far.pop_back(); // report later divergences once each
            }
        }
    }

    const std::string joined = join_fragments(fragments_so_far, profile);
    if (joined != trace.final_translation) {
        // Distinct from a mid-trace rewrite: the fragments are consistent but
        // final_translation has extra or missing tail content.
        bool already_flagged = false;
        for (const auto& v : verdict.violations) {
            if (v.code == "prefix-monotonicity") already_flagged = true;
        }
        if (!already_flagged) {
            flag(static_cast<int>(trace.steps.size()), "final-mismatch",
                 "final_translation does not equal the fragment concatenation");
        }
    }
    return verdict;
}

TargetEmissions replay_trace(const ActionTrace& trace, const SourceTimeline& timeline,
                             double compute_delay, const SpeakingModel& speech) {
    if (trace.steps.size() > timeline.size()) {
        throw DataError("trace '" + trace.sentence_id + "' consumes " +
                        std::to_string(trace.steps.size()) + " words, timeline has " +
                        std::to_string(timeline.size()));
    }
    std::vector<std::string> consumed = timeline.surfaces();
    consumed.resize(trace.steps.size());
    const Verdict verdict = validate_trace(trace, consumed, speech.profile);
    if (!verdict.ok()) {
        throw DataError("invalid trace '" + trace.sentence_id + "': " + verdict.summary());
    }

    TargetEmissions em;
    em.unit = speech.profile == LangProfile::SpaceTokenized ? TargetEmissions::Unit::Word
                                                            : TargetEmissions::Unit::Character;
    double clock = -std::numeric_limits<double>::infinity();
    for (const auto& step : trace.steps) {
        if (!is_emitting(step.action) || !step.output_fragment) continue;
        const double base = timeline.end_time(step.step_index) + compute_delay;
        double start = std::max(base, clock);
        const std::size_t units = speech.unit_count(*step.output_fragment);
        for (std::size_t u = 0; u < units; ++u) {
            em.onsets.push_back(start + static_cast<double>(u) * speech.seconds_per_unit);
        }
        clock = start + static_cast<double>(units) * speech.seconds_per_unit;
    }
    return em;
}

std::vector<std::string> effective_source(const ActionTrace& trace, LangProfile profile) {
    const Verdict verdict = validate_trace(trace, trace.source_words(), profile);
    if (!verdict.ok()) {
        throw DataError("invalid trace '" + trace.sentence_id + "': " + verdict.summary());
    }
    std::set<int> dropped;
    for (const auto& step : trace.steps) {
        for (int target : step.effective_drop_targets()) dropped.insert(target);
    }
    std::vector<std::string> out;
    for (const auto& step : trace.steps) {
        if (!dropped.count(step.step_index)) out.push_back(step.source_word);
    }
    return out;
}

std::map<Action, int> action_counts(const ActionTrace& trace) {
    std::map<Action, int> counts;
    for (const auto& step : trace.steps) ++counts[step.action];
    return counts;
}

ActionStats ActionStats::with_override(Action action, double bleu, double al_seconds) const {
    ActionStats out = *this;
    out.per_action[action] = {al_seconds, bleu};
    return out;
}

ActionStats parse_action_stats(const json& record) {
    ActionStats stats;
    stats.language_pair = record.value("language_pair", "");
    if (!record.contains("actions") || !record.at("actions").is_object()) {
        throw DataError("stats file must hold an \"actions\" object");
    }
    for (const auto& [name, entry] : record.at("actions").items()) {
        const Action action = parse_action(name);
        const auto& extended = extended_actions();
        if (std::find(extended.begin(), extended.end(), action) == extended.end()) {
            throw DataError("stats entries are only defined for the extended actions, got " +
                            name);
        }
        stats.per_action[action] = {entry.at("al_sec").get<double>(),
                                    entry.at("bleu").get<double>()};
    }
    return stats;
}

ActionStats load_action_stats(const std::filesystem::path& path) {
    json record;
    try {
        record = json::parse(read_text_file(path));
    } catch (const json::exception& e) {
        throw DataError(path.string() + ": invalid JSON: " + e.what());
    }
    return parse_action_stats(record);
}

json action_stats_to_json(const ActionStats& stats) {
    json actions = json::object();
    for (const auto& [action, line] : stats.per_action) {
        actions[action_prompt_name(action)] = {{"al_sec", line.al_seconds},
                                               {"bleu", line.bleu}};
    }
    return {{"language_pair", stats.language_pair}, {"actions", actions}};
}

ActionTrace parse_trace(const json& record, int line_no) {
    auto at_line = [&]() {
        return line_no > 0 ? " (line " + std::to_string(line_no) + ")" : std::string();
    };
    try {
        ActionTrace trace;
        trace.sentence_id = record.at("id").get<std::string>();
        trace.final_translation = record.value("final", "");
        for (const auto& s : record.at("steps")) {
            ActionStep step;
            step.step_index = s.at("i").get<int>();
            step.source_word = s.at("src").get<std::string>();
            step.action = parse_action(s.at("action").get<std::string>());
            if (s.contains("out") && !s.at("out").is_null()) {
                step.output_fragment = s.at("out").get<std::string>();
            }
            if (s.contains("why") && !s.at("why").is_null()) {
                step.explanation = s.at("why").get<std::string>();
            }
            if (s.contains("drop") && !s.at("drop").is_null()) {
                for (const auto& d : s.at("drop")) step.drop_targets.push_back(d.get<int>());
            }
            trace.steps.push_back(std::move(step));
        }
        return trace;
    } catch (const json::exception& e) {
        throw DataError("bad trace record" + at_line() + ": " + e.what());
    } catch (const DataError& e) {
        throw DataError(std::string(e.what()) + at_line());
    }
}

std::vector<ActionTrace> load_traces(const std::filesystem::path& path) {
    std::vector<ActionTrace> out;
    read_jsonl(path, [&](const json& record, int line_no) {
        out.push_back(parse_trace(record, line_no));
    });
    return out;
}

json trace_to_json(const ActionTrace& trace) {
    json steps = json::array();
    for (const auto& s : trace.steps) {
        json step = {{"i", s.step_index}, {"src", s.source_word},
                     {"action", action_name(s.action)}};
        if (s.output_fragment) step["out"] = *s.output_fragment;
        if (s.explanation) step["why"] = *s.explanation;
        if (!s.drop_targets.empty()) step["drop"] = s.drop_targets;
        steps.push_back(std::move(step));
    }
    return {{"id", trace.sentence_id}, {"steps", steps}, {"final", trace.final_translation}};
}

} // namespace simt
