#include "simt/sweep.hpp"

#include <algorithm>

#include "simt/errors.hpp"
#include "simt/report.hpp"

namespace simt {

namespace {

std::map<std::string, SourceTimeline> timeline_index(const std::filesystem::path& path) {
    std::map<std::string, SourceTimeline> index;
    for (auto& tl : load_timelines(path)) {
        const std::string id = tl.sentence_id();
        if (!index.emplace(id, std::move(tl)).second) {
            throw DataError("duplicate timeline id '" + id + "' in " + path.string());
        }
    }
    return index;
}

std::map<std::string, std::string> load_refs(const std::filesystem::path& path) {
    std::map<std::string, std::string> refs;
    read_jsonl(path, [&](const json& record, int line_no) {
        try {
            refs[record.at("id").get<std::string>()] = record.at("text").get<std::string>();
        } catch (const json::exception& e) {
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": bad reference record: " + e.what());
        }
    });
    return refs;
}

std::vector<Action> parse_action_list(const json& names) {
    std::vector<Action> actions;
    for (const auto& name : names) actions.push_back(parse_action(name.get<std::string>()));
    return actions;
}

json action_list_to_json(const std::vector<Action>& actions) {
    json out = json::array();
    for (Action a : actions) out.push_back(action_prompt_name(a));
    return out;
}

} // namespace

SweepConfig load_sweep_config(const std::filesystem::path& path) {
    json doc;
    try {
        doc = json::parse(read_text_file(path));
    } catch (const json::exception& e) {
        throw DataError(path.string() + ": invalid JSON: " + e.what());
    }
    const auto base = path.parent_path();
    auto resolve = [&](const std::string& p) -> std::filesystem::path {
        if (p.empty()) return {};
        std::filesystem::path candidate(p);
        return candidate.is_absolute() ? candidate : base / candidate;
    };

    SweepConfig config;
    config.source_lang = doc.value("source_lang", "en");
    config.target_lang = doc.value("target_lang", "zh");
    config.profile = lang_profile_from_name(doc.value("lang", "zh"));
    config.src_times = resolve(doc.value("src_times", ""));
    config.refs = resolve(doc.value("refs", ""));
    config.stats = resolve(doc.value("stats", ""));
    config.speak_rate = doc.value("speak_rate",
                                  SpeakingModel::for_profile(config.profile).seconds_per_unit);
    config.compute_delay = doc.value("delay", 0.0);
    for (const auto& entry : doc.value("combinations", json::array())) {
        SweepCombination combo;
        combo.name = entry.at("name").get<std::string>();
        combo.actions = parse_action_list(entry.value("actions", json::array()));
        combo.traces = resolve(entry.value("traces", ""));
        config.combinations.push_back(std::move(combo));
    }
    return config;
}

json sweep_config_to_json(const SweepConfig& config) {
    json combos = json::array();
    for (const auto& combo : config.combinations) {
        combos.push_back({{"name", combo.name},
                          {"actions", action_list_to_json(combo.actions)},
                          {"traces", combo.traces.string()}});
    }
    return {{"source_lang", config.source_lang},
            {"target_lang", config.target_lang},
            {"lang", lang_profile_name(config.profile)},
            {"src_times", config.src_times.string()},
            {"refs", config.refs.string()},
            {"stats", config.stats.string()},
            {"speak_rate", config.speak_rate},
            {"delay", config.compute_delay},
            {"combinations", combos}};
}

json SweepRow::to_json() const {
    json row = {{"name", name}, {"complete", complete}};
    if (complete) {
        row["bleu"] = scores.bleu;
        row["chrf"] = scores.chrf;
        row["ter"] = scores.ter;
        row["al_sec"] = mean_al;
        row["n_sentences"] = n_sentences;
        row["n_without_emissions"] = n_without_emissions;
    } else {
        row["gap"] = gap_reason;
    }
    return row;
}

std::string SweepReport::table() const {
    std::vector<std::vector<std::string>> cells;
    for (const auto& row : rows) {
        if (!row.complete) {
            cells.push_back({row.name, "-", "-", "-", "-", row.gap_reason});
            continue;
        }
        cells.push_back({row.name, format_fixed(row.scores.bleu, 2),
                         format_fixed(row.scores.chrf, 2), format_fixed(row.scores.ter, 2),
                         format_fixed(row.mean_al, 3), std::to_string(row.n_sentences)});
    }
    return render_table({"combination", "BLEU", "chrF", "TER", "AL(s)", "n"}, cells);
}

SweepReport run_sweep(const SweepConfig& config) {
    const auto timelines = timeline_index(config.src_times);
    const auto refs = load_refs(config.refs);
    const SpeakingModel speech = config.speaking_model();

    SweepReport report;
    report.header = run_header("sweep", sweep_config_to_json(config));

    for (const auto& combo : config.combinations) {
        SweepRow row;
        row.name = combo.name;
        if (combo.traces.empty() || !std::filesystem::exists(combo.traces)) {
            row.gap_reason = "missing traces file " + combo.traces.string();
            report.rows.push_back(std::move(row));
            continue;
        }
        try {
            std::vector<std::string> hyps;
            std::vector<std::string> ref_texts;
            std::vector<LatencyResult> latencies;
            for (const auto& trace : load_traces(combo.traces)) {
                auto tl = timelines.find(trace.sentence_id);
                if (tl == timelines.end()) {
                    throw DataError("trace '" + trace.sentence_id + "' has no timeline");
                }
                auto ref = refs.find(trace.sentence_id);
                if (ref == refs.end()) {
                    throw DataError("trace '" + trace.sentence_id + "' has no reference");
                }
                const TargetEmissions emissions =
                    replay_trace(trace, tl->second, config.compute_delay, speech);
                if (emissions.empty()) {
                    ++row.n_without_emissions;
                } else {
                    latencies.push_back(average_lagging_sec(tl->second, emissions));
                }
                hyps.push_back(trace.final_translation);
                ref_texts.push_back(ref->second);
                ++row.n_sentences;
            }
            if (hyps.empty()) {
                row.gap_reason = "trace file holds no sentences";
                report.rows.push_back(std::move(row));
                continue;
            }
            row.scores = score_corpus(hyps, ref_texts, config.profile);
            row.mean_al = latencies.empty() ? 0.0 : mean_al(latencies);
            row.complete = true;
        } catch (const DataError& e) {
            row.gap_reason = e.what();
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::map<std::string, std::string> sweep_prompts(const SweepConfig& config, PromptMode mode) {
    if (config.stats.empty()) throw DataError("sweep config has no stats file");
    const ActionStats stats = load_action_stats(config.stats);
    std::map<std::string, std::string> prompts;
    for (const auto& combo : config.combinations) {
        PromptSpec spec;
        spec.source_lang = config.source_lang;
        spec.target_lang = config.target_lang;
        spec.allowed_actions = combo.actions;
        spec.stats = stats;
        prompts[combo.name] = render_prompt(spec, mode);
    }
    return prompts;
}

json ArmReport::to_json() const {
    json counts = json::object();
    for (const auto& [action, count] : action_counts) {
        counts[action_prompt_name(action)] = count;
    }
    return {{"name", name},        {"bleu", scores.bleu},
            {"chrf", scores.chrf}, {"ter", scores.ter},
            {"al_sec", mean_al},   {"action_counts", counts},
            {"n_sentences", n_sentences}, {"n_failed", n_failed}};
}

std::string AdaptiveReport::table() const {
    auto cells = [&](const ArmReport& arm) {
        return std::vector<std::string>{arm.name, format_fixed(arm.scores.bleu, 2),
                                        format_fixed(arm.scores.chrf, 2),
                                        format_fixed(arm.scores.ter, 2),
                                        format_fixed(arm.mean_al, 3),
                                        std::to_string(arm.n_sentences)};
    };
    return render_table({"arm", "BLEU", "chrF", "TER", "AL(s)", "n"},
                        {cells(baseline), cells(promoted)});
}

namespace {

ArmReport run_arm(const std::string& name, const SweepConfig& config,
                  const std::vector<Action>& allowed, const ActionStats& stats,
                  const std::vector<std::string>& ids,
                  const std::map<std::string, SourceTimeline>& timelines,
                  const std::map<std::string, std::string>& refs,
                  const InferenceConfig& inference, ChatClient& client) {
    PromptSpec spec;
    spec.source_lang = config.source_lang;
    spec.target_lang = config.target_lang;
    spec.allowed_actions = allowed;
    spec.stats = stats;

    ArmReport arm;
    arm.name = name;
    const SpeakingModel speech = config.speaking_model();
    std::vector<std::string> hyps;
    std::vector<std::string> ref_texts;
    std::vector<LatencyResult> latencies;
    for (const auto& id : ids) {
        const auto& tl = timelines.at(id);
        const PrefixFeedOutcome outcome = run_prefix_feed(
            id, tl.surfaces(), spec, inference, client, config.profile);
        for (const auto& [action, count] : action_counts(outcome.trace)) {
            arm.action_counts[action] += count;
        }
        if (!outcome.ok()) {
            ++arm.n_failed;
            continue;
        }
        const TargetEmissions emissions = replay_trace(outcome.trace, tl, config.compute_delay,
                                                       speech);
        if (!emissions.empty()) {
            latencies.push_back(average_lagging_sec(tl, emissions));
        }
        hyps.push_back(outcome.trace.final_translation);
        ref_texts.push_back(refs.at(id));
        ++arm.n_sentences;
    }
    if (!hyps.empty()) arm.scores = score_corpus(hyps, ref_texts, config.profile);
    if (!latencies.empty()) arm.mean_al = mean_al(latencies);
    return arm;
}

} // namespace

AdaptiveReport run_adaptive(const SweepConfig& config,
                            const std::vector<Action>& allowed_actions,
                            const StatsOverride& stats_override, int top_n,
                            const std::vector<std::pair<std::string, double>>& baseline_al,
                            const InferenceConfig& inference, ChatClient& client) {
    if (top_n < 1) throw DataError("top_n must be >= 1");
    if (baseline_al.empty()) throw DataError("no baseline AL results to select from");

    const auto timelines = timeline_index(config.src_times);
    const auto refs = load_refs(config.refs);
    if (config.stats.empty()) throw DataError("adaptive run needs a stats file");
    const ActionStats stats = load_action_stats(config.stats);

    // Largest baseline AL first; ties by id for determinism.
    std::vector<std::pair<std::string, double>> ranked = baseline_al;
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    AdaptiveReport report;
    if (top_n > static_cast<int>(ranked.size())) {
        report.clamped = true;
        top_n = static_cast<int>(ranked.size());
    }
    for (int i = 0; i < top_n; ++i) {
        const auto& id = ranked[static_cast<std::size_t>(i)].first;
        if (!timelines.count(id)) throw DataError("baseline AL id '" + id + "' has no timeline");
        if (!refs.count(id)) throw DataError("baseline AL id '" + id + "' has no reference");
        report.selected_ids.push_back(id);
    }

    const ActionStats promoted_stats = stats.with_override(
        stats_override.action, stats_override.bleu_override, stats_override.al_override);

    json config_echo = sweep_config_to_json(config);
    config_echo["override"] = {{"action", action_prompt_name(stats_override.action)},
                               {"bleu", stats_override.bleu_override},
                               {"al_sec", stats_override.al_override}};
    config_echo["top_n"] = top_n;
    config_echo["inference"] = inference.to_json();
    report.header = run_header("adaptive", config_echo);

    report.baseline = run_arm("baseline", config, allowed_actions, stats, report.selected_ids,
                              timelines, refs, inference, client);
    report.promoted = run_arm("promoted", config, allowed_actions, promoted_stats,
                              report.selected_ids, timelines, refs, inference, client);
    return report;
}

} // namespace simt
