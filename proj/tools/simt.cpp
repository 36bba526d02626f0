// simt - simultaneous translation evaluation harness.
//
// Subcommands cover the pipeline end to end: wait insertion (align),
// segment scheduling (schedule), time-based average lagging (al), surface
// metrics (score), trace replay (replay), example retrieval (retrieve),
// batch request management (batch), prefix-fed inference (infer), the
// action-combination sweep (sweep), and the stats-override experiment
// (adaptive). Exit codes: 0 ok, 1 usage, 2 data error, 3 endpoint error.

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "simt/actions.hpp"
#include "simt/batch.hpp"
#include "simt/causal_align.hpp"
#include "simt/chat_client.hpp"
#include "simt/errors.hpp"
#include "simt/jsonl.hpp"
#include "simt/lang.hpp"
#include "simt/latency.hpp"
#include "simt/metrics.hpp"
#include "simt/prefix_feed.hpp"
#include "simt/prompt.hpp"
#include "simt/report.hpp"
#include "simt/retrieval.hpp"
#include "simt/sweep.hpp"
#include "simt/timeline.hpp"

namespace {

using simt::json;

std::map<std::string, simt::SourceTimeline> load_timeline_index(const std::string& path) {
    std::map<std::string, simt::SourceTimeline> index;
    for (auto& tl : simt::load_timelines(path)) {
        const std::string id = tl.sentence_id();
        if (!index.emplace(id, std::move(tl)).second) {
            throw simt::DataError("duplicate timeline id '" + id + "' in " + path);
        }
    }
    return index;
}

const simt::SourceTimeline& timeline_for(
    const std::map<std::string, simt::SourceTimeline>& index, const std::string& id) {
    auto it = index.find(id);
    if (it == index.end()) throw simt::DataError("no timeline for sentence id '" + id + "'");
    return it->second;
}

std::vector<simt::Action> parse_action_csv(const std::string& csv) {
    std::vector<simt::Action> actions;
    std::string token;
    std::istringstream ss(csv);
    while (std::getline(ss, token, ',')) {
        if (!token.empty()) actions.push_back(simt::parse_action(token));
    }
    return actions;
}

std::pair<std::string, std::string> split_lang_pair(const std::string& pair) {
    const auto dash = pair.find('-');
    if (dash == std::string::npos || dash == 0 || dash + 1 == pair.size()) {
        throw simt::DataError("language pair must look like en-zh, got '" + pair + "'");
    }
    return {pair.substr(0, dash), pair.substr(dash + 1)};
}

void write_output(const std::string& path, const json& header,
                  const std::vector<json>& rows) {
    simt::write_report(path, header, rows);
    std::cout << "wrote " << path << " (" << rows.size() << " records)\n";
}

std::unique_ptr<simt::ChatClient> make_client(const std::string& endpoint,
                                              const std::string& replay_log,
                                              const simt::InferenceConfig& config) {
    if (!replay_log.empty()) {
        return std::make_unique<simt::ReplayChatClient>(
            simt::ReplayChatClient::from_file(replay_log));
    }
    if (endpoint.empty()) {
        throw simt::DataError("either --endpoint or --replay is required");
    }
    return std::make_unique<simt::HttpChatClient>(config);
}

// --- subcommand bodies -------------------------------------------------------

struct AlignArgs {
    std::string src_times, align, tgt, lang = "zh", out;
    double speak_rate = -1.0;
};

simt::SpeakingModel speaking_model_for(const std::string& lang, double speak_rate) {
    auto model = simt::SpeakingModel::for_profile(simt::lang_profile_from_name(lang));
    if (speak_rate > 0) model.seconds_per_unit = speak_rate;
    return model;
}

int cmd_align(const AlignArgs& args) {
    const auto timelines = load_timeline_index(args.src_times);
    const auto speech = speaking_model_for(args.lang, args.speak_rate);

    std::map<std::string, simt::AlignmentSet> alignments;
    simt::read_jsonl(args.align, [&](const json& record, int line_no) {
        alignments[record.at("id").get<std::string>()] =
            simt::parse_alignment(record, line_no);
    });

    std::vector<json> rows;
    simt::read_jsonl(args.tgt, [&](const json& record, int line_no) {
        try {
            const std::string id = record.at("id").get<std::string>();
            std::vector<std::string> words;
            for (const auto& w : record.at("words")) words.push_back(w.get<std::string>());
            const auto& timeline = timeline_for(timelines, id);
            simt::AlignmentSet alignment; // ids without links stay unconstrained
            if (auto it = alignments.find(id); it != alignments.end()) {
                alignment = it->second;
            }
            rows.push_back(simt::marked_to_json(
                id, simt::insert_waits(words, alignment, timeline, speech)));
        } catch (const json::exception& e) {
            throw simt::DataError(args.tgt + ":" + std::to_string(line_no) +
                                  ": bad target record: " + e.what());
        }
    });

    write_output(args.out,
                 simt::run_header("align", {{"src_times", args.src_times},
                                            {"align", args.align},
                                            {"tgt", args.tgt},
                                            {"lang", args.lang},
                                            {"speak_rate", speech.seconds_per_unit}}),
                 rows);
    return 0;
}

struct ScheduleArgs {
    std::string src_times, marked, lang = "zh", out, emissions_out;
    double speak_rate = -1.0;
};

int cmd_schedule(const ScheduleArgs& args) {
    const auto timelines = load_timeline_index(args.src_times);
    const auto speech = speaking_model_for(args.lang, args.speak_rate);

    std::vector<json> rows;
    std::vector<json> emission_rows;
    simt::read_jsonl(args.marked, [&](const json& record, int line_no) {
        const std::string id = record.at("id").get<std::string>();
        const auto marked = simt::parse_marked(record, line_no);
        const auto table =
            simt::build_timetable(marked, timeline_for(timelines, id), speech);
        rows.push_back(simt::timetable_to_json(id, table));
        if (!args.emissions_out.empty()) {
            emission_rows.push_back(
                simt::emissions_to_json(id, simt::emissions_from_timetable(table, speech)));
        }
    });

    const json header = simt::run_header(
        "schedule", {{"src_times", args.src_times}, {"marked", args.marked},
                     {"lang", args.lang}, {"speak_rate", speech.seconds_per_unit}});
    write_output(args.out, header, rows);
    if (!args.emissions_out.empty()) write_output(args.emissions_out, header, emission_rows);
    return 0;
}

struct AlArgs {
    std::string src_times, emissions, timetable, lang = "zh", out;
    double speak_rate = -1.0;
};

int cmd_al(const AlArgs& args) {
    const auto timelines = load_timeline_index(args.src_times);
    const auto speech = speaking_model_for(args.lang, args.speak_rate);

    std::vector<std::pair<std::string, simt::TargetEmissions>> per_sentence;
    if (!args.emissions.empty()) {
        simt::read_jsonl(args.emissions, [&](const json& record, int line_no) {
            per_sentence.emplace_back(record.at("id").get<std::string>(),
                                      simt::parse_emissions(record, line_no));
        });
    } else {
        simt::read_jsonl(args.timetable, [&](const json& record, int line_no) {
            const auto table = simt::parse_timetable(record, line_no);
            per_sentence.emplace_back(record.at("id").get<std::string>(),
                                      simt::emissions_from_timetable(table, speech));
        });
    }

    std::vector<json> rows;
    std::vector<simt::LatencyResult> results;
    for (const auto& [id, emissions] : per_sentence) {
        const auto result =
            simt::average_lagging_sec(timeline_for(timelines, id), emissions);
        rows.push_back(simt::latency_to_json(id, result));
        results.push_back(result);
    }

    write_output(args.out,
                 simt::run_header("al", {{"src_times", args.src_times},
                                         {"emissions", args.emissions},
                                         {"timetable", args.timetable},
                                         {"lang", args.lang},
                                         {"speak_rate", speech.seconds_per_unit}}),
                 rows);
    const double corpus = simt::mean_al(results);
    std::cout << simt::render_table(
        {"sentences", "mean AL(s)"},
        {{std::to_string(results.size()), simt::format_fixed(corpus, 3)}});
    std::cout << simt::format_fixed(corpus, 3) << "\n";
    return 0;
}

struct ScoreArgs {
    std::string hyp, ref, lang, out;
};

int cmd_score(const ScoreArgs& args) {
    const auto hyps = simt::read_lines(args.hyp);
    const auto refs = simt::read_lines(args.ref);
    const auto profile = simt::lang_profile_from_name(args.lang);
    const auto report = simt::score_corpus(hyps, refs, profile);

    json out = report.to_json();
    out["lang_profile"] = simt::lang_profile_name(profile);
    std::cout << out.dump() << "\n";
    std::cout << simt::render_table({"BLEU", "chrF", "TER", "n"},
                                    {{simt::format_fixed(report.bleu, 2),
                                      simt::format_fixed(report.chrf, 2),
                                      simt::format_fixed(report.ter, 2),
                                      std::to_string(report.n_sentences)}});
    if (!args.out.empty()) {
        write_output(args.out,
                     simt::run_header("score", {{"hyp", args.hyp},
                                                {"ref", args.ref},
                                                {"lang", args.lang}}),
                     {out});
    }
    return 0;
}

struct ReplayArgs {
    std::string trace, src_times, lang = "zh", out;
    double speak_rate = -1.0;
    double delay = 0.0;
    bool validate_only = false;
};

int cmd_replay(const ReplayArgs& args) {
    const auto timelines = load_timeline_index(args.src_times);
    const auto speech = speaking_model_for(args.lang, args.speak_rate);

    std::vector<json> rows;
    for (const auto& trace : simt::load_traces(args.trace)) {
        const auto& timeline = timeline_for(timelines, trace.sentence_id);
        std::vector<std::string> consumed = timeline.surfaces();
        consumed.resize(std::min(trace.steps.size(), timeline.size()));
        const auto verdict = simt::validate_trace(trace, consumed, speech.profile);
        if (!verdict.ok()) {
            throw simt::DataError("trace '" + trace.sentence_id +
                                  "' invalid: " + verdict.summary());
        }
        std::cout << trace.sentence_id << ": ok (" << trace.steps.size() << " steps)\n";
        if (!args.validate_only) {
            rows.push_back(simt::emissions_to_json(
                trace.sentence_id,
                simt::replay_trace(trace, timeline, args.delay, speech)));
        }
    }
    if (!args.validate_only) {
        write_output(args.out,
                     simt::run_header("replay", {{"trace", args.trace},
                                                 {"src_times", args.src_times},
                                                 {"lang", args.lang},
                                                 {"speak_rate", speech.seconds_per_unit},
                                                 {"delay", args.delay}}),
                     rows);
    }
    return 0;
}

struct RetrieveArgs {
    std::string bank, rules, query, query_emb;
    int n = 4;
    int k = 8;
    std::uint64_t seed = 17;
};

int cmd_retrieve(const RetrieveArgs& args) {
    const auto bank = simt::load_bank(args.bank);
    std::vector<simt::BankExample> picked;
    if (!args.query_emb.empty()) {
        std::vector<double> query;
        std::istringstream ss(args.query_emb);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            query.push_back(std::stod(tok));
        }
        const auto model = simt::kmeans_fit(bank, args.k, args.seed);
        picked = simt::retrieve_by_embedding(query, model, bank, args.n);
    } else {
        if (args.rules.empty()) {
            throw simt::DataError("keyword retrieval needs --rules");
        }
        const auto rules = simt::load_keyword_rules(args.rules);
        picked = simt::retrieve_by_keywords(args.query, rules, bank, args.n);
    }
    for (const auto& ex : picked) std::cout << simt::bank_example_to_json(ex).dump() << "\n";
    return 0;
}

struct BatchBuildArgs {
    std::string input, stats, lang_pair = "en-zh", out_dir, model = "qwen3-8b";
    std::string actions = "DROP,PARTIAL_SUMMARIZATION,CUT,PRONOUN";
    int shard_size = 64;
    int seed = 17;
};

int cmd_batch_build(const BatchBuildArgs& args) {
    const auto [src, tgt] = split_lang_pair(args.lang_pair);
    simt::PromptSpec spec;
    spec.source_lang = src;
    spec.target_lang = tgt;
    spec.allowed_actions = parse_action_csv(args.actions);
    if (!args.stats.empty()) spec.stats = simt::load_action_stats(args.stats);

    simt::InferenceConfig config;
    config.model = args.model;
    config.seed = args.seed;

    const auto job =
        simt::build_batch(simt::read_lines(args.input), spec, config, args.shard_size);
    const auto paths = simt::write_shards(job, args.out_dir);

    json manifest = simt::run_header(
        "batch build",
        {{"input", args.input}, {"stats", args.stats}, {"lang_pair", args.lang_pair},
         {"shard_size", args.shard_size}, {"inference", config.to_json()}});
    manifest["_header"]["n_input"] = job.input_count;
    manifest["_header"]["n_requests"] = job.request_count;
    manifest["_header"]["n_shards"] = job.shards.size();
    std::ofstream mf(std::filesystem::path(args.out_dir) / "manifest.json");
    mf << manifest.dump(2) << "\n";

    std::cout << job.input_count << " sentences in, " << job.request_count
              << " requests after trim+dedup, " << paths.size() << " shards in "
              << args.out_dir << "\n";
    return 0;
}

struct BatchMergeArgs {
    std::string out;
    std::vector<std::string> files;
};

int cmd_batch_merge(const BatchMergeArgs& args) {
    std::vector<std::filesystem::path> paths(args.files.begin(), args.files.end());
    const auto merged = simt::merge_results(paths);
    simt::write_jsonl(args.out, merged.records);
    std::cout << "merged " << merged.records.size() << " records into " << args.out << "\n";
    if (!merged.conflict_ids.empty()) {
        std::cerr << "conflicting payloads for " << merged.conflict_ids.size()
                  << " custom_id(s):\n";
        for (const auto& id : merged.conflict_ids) std::cerr << "  " << id << "\n";
        return 2;
    }
    return 0;
}

struct InferArgs {
    std::string sentences, stats, lang_pair = "en-zh", out;
    std::string actions = "DROP,PARTIAL_SUMMARIZATION,CUT,PRONOUN";
    std::string endpoint, record_log, replay_log, model = "qwen3-8b";
    int seed = 17;
};

int cmd_infer(const InferArgs& args) {
    const auto [src, tgt] = split_lang_pair(args.lang_pair);
    const auto profile = simt::lang_profile_from_name(tgt == "zh" ? "zh" : "de");

    simt::PromptSpec spec;
    spec.source_lang = src;
    spec.target_lang = tgt;
    spec.allowed_actions = parse_action_csv(args.actions);
    if (!args.stats.empty()) spec.stats = simt::load_action_stats(args.stats);

    simt::InferenceConfig config;
    config.base_url = args.endpoint;
    config.model = args.model;
    config.seed = args.seed;

    auto client = make_client(args.endpoint, args.replay_log, config);
    std::optional<simt::RecordingChatClient> recorder;
    simt::ChatClient* active = client.get();
    if (!args.record_log.empty()) {
        recorder.emplace(*client);
        active = &*recorder;
    }

    std::vector<json> rows;
    int sentence_no = 0;
    for (const auto& line : simt::read_lines(args.sentences)) {
        const auto words = simt::profile_units(line, simt::LangProfile::SpaceTokenized);
        const std::string id = "s" + std::to_string(sentence_no++);
        const auto outcome =
            simt::run_prefix_feed(id, words, spec, config, *active, profile);
        json row = simt::trace_to_json(outcome.trace);
        row["status"] = simt::feed_status_name(outcome.status);
        if (!outcome.ok()) row["offending_step"] = outcome.offending_step;
        rows.push_back(std::move(row));
        std::cout << id << ": " << simt::feed_status_name(outcome.status) << "\n";
    }
    if (recorder) recorder->save(args.record_log);

    write_output(args.out,
                 simt::run_header("infer", {{"sentences", args.sentences},
                                            {"stats", args.stats},
                                            {"lang_pair", args.lang_pair},
                                            {"actions", args.actions},
                                            {"inference", config.to_json()}}),
                 rows);
    return 0;
}

struct SweepArgs {
    std::string config, out_dir;
    bool render_prompts = false;
};

int cmd_sweep(const SweepArgs& args) {
    const auto config = simt::load_sweep_config(args.config);
    const auto report = simt::run_sweep(config);

    std::filesystem::create_directories(args.out_dir);
    std::vector<json> rows;
    for (const auto& row : report.rows) rows.push_back(row.to_json());
    write_output((std::filesystem::path(args.out_dir) / "sweep.jsonl").string(),
                 report.header, rows);

    const std::string table = report.table();
    std::ofstream((std::filesystem::path(args.out_dir) / "sweep.txt")) << table;
    std::cout << table;

    bool any_gap = false;
    for (const auto& row : report.rows) {
        if (!row.complete) {
            any_gap = true;
            std::cerr << "gap: " << row.name << ": " << row.gap_reason << "\n";
        }
    }

    if (args.render_prompts) {
        const auto prompts = simt::sweep_prompts(config, simt::PromptMode::PrefixFeed);
        const auto dir = std::filesystem::path(args.out_dir) / "prompts";
        std::filesystem::create_directories(dir);
        for (const auto& [name, text] : prompts) {
            std::ofstream(dir / (name + ".txt")) << text;
        }
        std::cout << "rendered " << prompts.size() << " prompts into " << dir.string() << "\n";
    }
    return any_gap ? 2 : 0;
}

struct AdaptiveArgs {
    std::string config, baseline_al, action = "PARTIAL_SUMMARIZATION";
    double bleu = 90.0, al = 0.10;
    int top_n = 100;
    std::string endpoint, record_log, replay_log, model = "qwen3-8b", out_dir;
    int seed = 17;
};

int cmd_adaptive(const AdaptiveArgs& args) {
    const auto config = simt::load_sweep_config(args.config);

    std::vector<std::pair<std::string, double>> baseline;
    simt::read_jsonl(args.baseline_al, [&](const json& record, int) {
        baseline.emplace_back(record.at("id").get<std::string>(),
                              record.at("al_sec").get<double>());
    });

    simt::InferenceConfig inference;
    inference.base_url = args.endpoint;
    inference.model = args.model;
    inference.seed = args.seed;

    auto client = make_client(args.endpoint, args.replay_log, inference);
    std::optional<simt::RecordingChatClient> recorder;
    simt::ChatClient* active = client.get();
    if (!args.record_log.empty()) {
        recorder.emplace(*client);
        active = &*recorder;
    }

    simt::StatsOverride promo;
    promo.action = simt::parse_action(args.action);
    promo.bleu_override = args.bleu;
    promo.al_override = args.al;

    if (args.top_n > 0 && static_cast<std::size_t>(args.top_n) > baseline.size()) {
        std::cerr << "warning: top_n " << args.top_n << " exceeds corpus size "
                  << baseline.size() << ", clamping\n";
    }

    const auto report = simt::run_adaptive(config, simt::extended_actions(), promo,
                                           args.top_n, baseline, inference, *active);
    if (recorder) recorder->save(args.record_log);

    std::filesystem::create_directories(args.out_dir);
    write_output((std::filesystem::path(args.out_dir) / "adaptive.jsonl").string(),
                 report.header,
                 {report.baseline.to_json(), report.promoted.to_json(),
                  json{{"selected_ids", report.selected_ids}, {"clamped", report.clamped}}});
    const std::string table = report.table();
    std::ofstream((std::filesystem::path(args.out_dir) / "adaptive.txt")) << table;
    std::cout << table;
    return 0;
}

struct PromptArgs {
    std::string stats, lang_pair = "en-zh", mode = "prefix";
    std::string actions = "DROP,PARTIAL_SUMMARIZATION,CUT,PRONOUN";
};

int cmd_prompt(const PromptArgs& args) {
    const auto [src, tgt] = split_lang_pair(args.lang_pair);
    simt::PromptSpec spec;
    spec.source_lang = src;
    spec.target_lang = tgt;
    spec.allowed_actions = parse_action_csv(args.actions);
    if (!args.stats.empty()) spec.stats = simt::load_action_stats(args.stats);
    std::cout << simt::render_prompt(spec, args.mode == "single"
                                               ? simt::PromptMode::SingleShot
                                               : simt::PromptMode::PrefixFeed)
              << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"simultaneous translation evaluation harness"};
    app.require_subcommand(1);

    AlignArgs align_args;
    auto* align = app.add_subcommand("align", "insert wait markers from word alignments");
    align->add_option("--src-times", align_args.src_times)->required();
    align->add_option("--align", align_args.align)->required();
    align->add_option("--tgt", align_args.tgt)->required();
    align->add_option("--lang", align_args.lang);
    align->add_option("--speak-rate", align_args.speak_rate);
    align->add_option("--out", align_args.out)->required();

    ScheduleArgs schedule_args;
    auto* schedule = app.add_subcommand("schedule", "derive segment timetables");
    schedule->add_option("--src-times", schedule_args.src_times)->required();
    schedule->add_option("--marked", schedule_args.marked)->required();
    schedule->add_option("--lang", schedule_args.lang);
    schedule->add_option("--speak-rate", schedule_args.speak_rate);
    schedule->add_option("--out", schedule_args.out)->required();
    schedule->add_option("--emissions-out", schedule_args.emissions_out);

    AlArgs al_args;
    auto* al = app.add_subcommand("al", "time-based average lagging");
    al->add_option("--src-times", al_args.src_times)->required();
    al->add_option("--emissions", al_args.emissions);
    al->add_option("--timetable", al_args.timetable);
    al->add_option("--lang", al_args.lang);
    al->add_option("--speak-rate", al_args.speak_rate);
    al->add_option("--out", al_args.out)->required();

    ScoreArgs score_args;
    auto* score = app.add_subcommand("score", "BLEU/chrF/TER scoring");
    score->add_option("--hyp", score_args.hyp)->required();
    score->add_option("--ref", score_args.ref)->required();
    score->add_option("--lang", score_args.lang)->required();
    score->add_option("--out", score_args.out);

    ReplayArgs replay_args;
    auto* replay = app.add_subcommand("replay", "validate and replay action traces");
    replay->add_option("--trace", replay_args.trace)->required();
    replay->add_option("--src-times", replay_args.src_times)->required();
    replay->add_option("--lang", replay_args.lang);
    replay->add_option("--speak-rate", replay_args.speak_rate);
    replay->add_option("--delay", replay_args.delay);
    replay->add_option("--out", replay_args.out);
    replay->add_flag("--validate-only", replay_args.validate_only);

    RetrieveArgs retrieve_args;
    auto* retrieve = app.add_subcommand("retrieve", "select in-context examples");
    retrieve->add_option("--bank", retrieve_args.bank)->required();
    retrieve->add_option("--rules", retrieve_args.rules);
    retrieve->add_option("--query", retrieve_args.query);
    retrieve->add_option("--query-emb", retrieve_args.query_emb);
    retrieve->add_option("-n", retrieve_args.n);
    retrieve->add_option("--k", retrieve_args.k);
    retrieve->add_option("--seed", retrieve_args.seed);

    auto* batch = app.add_subcommand("batch", "batch request management");
    batch->require_subcommand(1);
    BatchBuildArgs build_args;
    auto* batch_build = batch->add_subcommand("build", "shard deduplicated requests");
    batch_build->add_option("--input", build_args.input)->required();
    batch_build->add_option("--stats", build_args.stats);
    batch_build->add_option("--lang-pair", build_args.lang_pair);
    batch_build->add_option("--actions", build_args.actions);
    batch_build->add_option("--shard-size", build_args.shard_size);
    batch_build->add_option("--seed", build_args.seed);
    batch_build->add_option("--model", build_args.model);
    batch_build->add_option("--out-dir", build_args.out_dir)->required();
    BatchMergeArgs merge_args;
    auto* batch_merge = batch->add_subcommand("merge", "merge result files by custom_id");
    batch_merge->add_option("--out", merge_args.out)->required();
    batch_merge->add_option("files", merge_args.files)->required();

    InferArgs infer_args;
    auto* infer = app.add_subcommand("infer", "prefix-fed stepwise inference");
    infer->add_option("--sentences", infer_args.sentences)->required();
    infer->add_option("--stats", infer_args.stats);
    infer->add_option("--lang-pair", infer_args.lang_pair);
    infer->add_option("--actions", infer_args.actions);
    infer->add_option("--endpoint", infer_args.endpoint);
    infer->add_option("--record", infer_args.record_log);
    infer->add_option("--replay", infer_args.replay_log);
    infer->add_option("--model", infer_args.model);
    infer->add_option("--seed", infer_args.seed);
    infer->add_option("--out", infer_args.out)->required();

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand("sweep", "action-combination sweep report");
    sweep->add_option("--config", sweep_args.config)->required();
    sweep->add_option("--out-dir", sweep_args.out_dir)->required();
    sweep->add_flag("--render-prompts", sweep_args.render_prompts);

    AdaptiveArgs adaptive_args;
    auto* adaptive = app.add_subcommand("adaptive", "stats-override behavior experiment");
    adaptive->add_option("--config", adaptive_args.config)->required();
    adaptive->add_option("--baseline-al", adaptive_args.baseline_al)->required();
    adaptive->add_option("--action", adaptive_args.action);
    adaptive->add_option("--bleu", adaptive_args.bleu);
    adaptive->add_option("--al", adaptive_args.al);
    adaptive->add_option("--top-n", adaptive_args.top_n);
    adaptive->add_option("--endpoint", adaptive_args.endpoint);
    adaptive->add_option("--record", adaptive_args.record_log);
    adaptive->add_option("--replay", adaptive_args.replay_log);
    adaptive->add_option("--model", adaptive_args.model);
    adaptive->add_option("--seed", adaptive_args.seed);
    adaptive->add_option("--out-dir", adaptive_args.out_dir)->required();

    PromptArgs prompt_args;
    auto* prompt = app.add_subcommand("prompt", "render an inference prompt");
    prompt->add_option("--stats", prompt_args.stats);
    prompt->add_option("--lang-pair", prompt_args.lang_pair);
    prompt->add_option("--actions", prompt_args.actions);
    prompt->add_option("--mode", prompt_args.mode);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*align) return cmd_align(align_args);
        if (*schedule) return cmd_schedule(schedule_args);
        if (*al) return cmd_al(al_args);
        if (*score) return cmd_score(score_args);
        if (*replay) return cmd_replay(replay_args);
        if (*retrieve) return cmd_retrieve(retrieve_args);
        if (*batch_build) return cmd_batch_build(build_args);
        if (*batch_merge) return cmd_batch_merge(merge_args);
        if (*infer) return cmd_infer(infer_args);
        if (*sweep) return cmd_sweep(sweep_args);
        if (*adaptive) return cmd_adaptive(adaptive_args);
        if (*prompt) return cmd_prompt(prompt_args);
    } catch (const simt::EndpointError& e) {
        std::cerr << "endpoint error: " << e.what() << "\n";
        return 3;
    } catch (const simt::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
