#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "simt/jsonl.hpp"
#include "simt/lang.hpp"
#include "simt/timeline.hpp"

namespace simt {

// The six actions a stepwise interpreter may take. READ and WRITE are the
// conventional pair; the other four restructure, omit, or simplify.
enum class Action {
    Read,
    Write,
    Drop,
    Cut,
    PartialSummarization,
    Pronominalization,
};

// Accepts canonical names plus the prompt short forms PRONOUN and
// SENTENCE_CUT, canonicalizing them.
Action parse_action(const std::string& name);
std::string action_name(Action action);        // canonical serialization name
std::string action_prompt_name(Action action); // name used inside prompts
bool is_emitting(Action action);               // carries an output fragment

const std::vector<Action>& extended_actions(); // the four non-READ/WRITE actions

// One decision step: the source word consumed, the action taken, and the
// incremental output when the action emits. DROP may list the 1-based step
// ordinals whose words it removes (defaults to the step's own word), which
// is how a drop of a multi-word repetition is expressed.
struct ActionStep {
    int step_index = 0; // 1-based
    std::string source_word;
    Action action = Action::Read;
    std::optional<std::string> output_fragment;
    std::optional<std::string> explanation;
    std::vector<int> drop_targets;

    std::vector<int> effective_drop_targets() const {
        if (action != Action::Drop) return {};
        return drop_targets.empty() ? std::vector<int>{step_index} : drop_targets;
    }
};

struct ActionTrace {
    std::string sentence_id;
    std::vector<ActionStep> steps;
    std::string final_translation;

    std::vector<std::string> source_words() const;
    std::vector<std::string> fragments() const; // outputs of emitting steps, in order
};

struct Violation {
    int step = 0;
    std::string code;
    std::string message;
};

struct Verdict {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    std::string summary() const;
};

// Structural validation: step/source-word agreement, fragment presence
// rules, drop-target sanity, and prefix-monotonicity of the accumulated
// fragments against final_translation. Violations are data, not errors.
Verdict validate_trace(const ActionTrace& trace,
                       const std::vector<std::string>& source_words,
                       LangProfile profile);

// Emits each fragment at (end time of the consumed source word) + delay,
// expanded to per-unit onsets at the speaking rate; the stream clock never
// runs backwards, so onsets are non-decreasing. Throws DataError carrying
// the verdict if the trace does not validate against the timeline.
TargetEmissions replay_trace(const ActionTrace& trace, const SourceTimeline& timeline,
                             double compute_delay, const SpeakingModel& speech);

// Source word sequence with every DROP-targeted word removed — what a
// quality audit should compare against.
std::vector<std::string> effective_source(const ActionTrace& trace, LangProfile profile);

std::map<Action, int> action_counts(const ActionTrace& trace);

// Dev-set statistics injected into prompts: per extended action, the AL and
// BLEU measured for translations produced with that action alone.
struct ActionStatLine {
    double al_seconds = 0.0;
    double bleu = 0.0;
};

struct ActionStats {
    std::string language_pair;
    std::map<Action, ActionStatLine> per_action; // extended actions only

    ActionStats with_override(Action action, double bleu, double al_seconds) const;
};

ActionStats parse_action_stats(const json& record);
ActionStats load_action_stats(const std::filesystem::path& path);
json action_stats_to_json(const ActionStats& stats);

// --- trace file format ------------------------------------------------------
// {"id": "...",
//  "steps": [{"i": 1, "src": "We", "action": "READ", "out": "...", "why": "...",
//             "drop": [16, 17]}, ...],
//  "final": "..."}
// "i" and "drop" entries are 1-based step ordinals, matching how stepwise
// decision tables are written.

ActionTrace parse_trace(const json& record, int line_no = 0);
std::vector<ActionTrace> load_traces(const std::filesystem::path& path);
json trace_to_json(const ActionTrace& trace);

} // namespace simt
