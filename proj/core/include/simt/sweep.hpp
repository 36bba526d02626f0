#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "simt/actions.hpp"
#include "simt/chat_client.hpp"
#include "simt/lang.hpp"
#include "simt/latency.hpp"
#include "simt/metrics.hpp"
#include "simt/prefix_feed.hpp"
#include "simt/prompt.hpp"

namespace simt {

// One arm of the action-combination sweep: a named subset of the extended
// actions (READ/WRITE implicit) and the trace file produced under it.
struct SweepCombination {
    std::string name;
    std::vector<Action> actions;
    std::filesystem::path traces; // empty path marks a missing input
};

struct SweepConfig {
    std::string source_lang = "en";
    std::string target_lang = "zh";
    LangProfile profile = LangProfile::CharacterZh;
    std::filesystem::path src_times;
    std::filesystem::path refs; // {"id": ..., "text": ...} JSONL
    std::filesystem::path stats;
    double speak_rate = 0.25;
    double compute_delay = 0.0;
    std::vector<SweepCombination> combinations;

    SpeakingModel speaking_model() const { return {profile, speak_rate}; }
};

// Relative paths inside the file resolve against the config's directory.
SweepConfig load_sweep_config(const std::filesystem::path& path);
json sweep_config_to_json(const SweepConfig& config);

struct SweepRow {
    std::string name;
    bool complete = false;
    std::string gap_reason; // set when not complete
    ScoreReport scores;
    double mean_al = 0.0;
    int n_sentences = 0;
    int n_without_emissions = 0; // traces that never emit have no latency

    json to_json() const;
};

struct SweepReport {
    json header;
    std::vector<SweepRow> rows;

    std::string table() const;
};

// Replays each combination's traces against the shared timelines, scores the
// final translations against the references, and averages per-sentence AL.
// Rows are independent; missing inputs leave a gap row rather than failing
// the sweep.
SweepReport run_sweep(const SweepConfig& config);

// Rendered inference prompt per combination, from the sweep's stats file.
std::map<std::string, std::string> sweep_prompts(const SweepConfig& config, PromptMode mode);

// --- adaptive-behavior experiment -------------------------------------------

// Promotes one action by overriding its advertised statistics.
struct StatsOverride {
    Action action = Action::PartialSummarization;
    double bleu_override = 0.0;
    double al_override = 0.0;
};

struct ArmReport {
    std::string name;
    ScoreReport scores;
    double mean_al = 0.0;
    std::map<Action, int> action_counts;
    int n_sentences = 0;
    int n_failed = 0; // prefix-feed runs that did not finish cleanly

    json to_json() const;
};

struct AdaptiveReport {
    json header;
    std::vector<std::string> selected_ids;
    bool clamped = false;
    ArmReport baseline;
    ArmReport promoted;

    std::string table() const;
};

// Selects the top_n sentences with the largest baseline AL, then runs the
// prefix-feed protocol twice over them — once with the original statistics
// and once with the override — against the same client, reporting per-arm
// quality, latency, and action-usage counts.
AdaptiveReport run_adaptive(const SweepConfig& config,
                            const std::vector<Action>& allowed_actions,
                            const StatsOverride& stats_override, int top_n,
                            const std::vector<std::pair<std::string, double>>& baseline_al,
                            const InferenceConfig& inference, ChatClient& client);

} // namespace simt
