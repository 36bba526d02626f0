#include "simt/timeline.hpp"

#include <cmath>

#include "simt/errors.hpp"

namespace simt {

namespace {

std::string at_line(int line_no) {
    return line_no > 0 ? " (line " + std::to_string(line_no) + ")" : "";
}

} // namespace

SourceTimeline::SourceTimeline(std::string sentence_id, std::vector<TimedWord> words)
    : sentence_id_(std::move(sentence_id)), words_(std::move(words)) {
    double prev_end = 0.0;
    bool first = true;
    for (std::size_t i = 0; i < words_.size(); ++i) {
        const auto& w = words_[i];
        if (w.start < 0.0 || w.end < w.start) {
            throw DataError("timeline '" + sentence_id_ + "': word " + std::to_string(i) +
                            " (\"" + w.surface + "\") has invalid interval [" +
                            std::to_string(w.start) + ", " + std::to_string(w.end) + "]");
        }
        if (!first && w.end < prev_end) {
            throw DataError("timeline '" + sentence_id_ + "': non-monotone end time at word " +
                            std::to_string(i) + " (\"" + w.surface + "\")");
        }
        prev_end = w.end;
        first = false;
    }
}

std::vector<std::string> SourceTimeline::surfaces() const {
    std::vector<std::string> out;
    out.reserve(words_.size());
    for (const auto& w : words_) out.push_back(w.surface);
    return out;
}

double time_at_index(double x, const SourceTimeline& timeline) {
    if (timeline.empty()) throw DataError("empty source timeline");
    const int n = static_cast<int>(timeline.size());
    if (x <= 1.0) return timeline.end_time(1);
    if (x >= static_cast<double>(n)) return timeline.end_time(n);
    const int i = static_cast<int>(std::floor(x));
    const double w = x - static_cast<double>(i);
    return (1.0 - w) * timeline.end_time(i) + w * timeline.end_time(i + 1);
}

SourceTimeline parse_timeline(const json& record, int line_no) {
    try {
        std::string id = record.at("id").get<std::string>();
        std::vector<TimedWord> words;
        for (const auto& w : record.at("words")) {
            words.push_back({w.at("w").get<std::string>(),
                             w.at("start").get<double>(),
                             w.at("end").get<double>()});
        }
        return SourceTimeline(std::move(id), std::move(words));
    } catch (const json::exception& e) {
        throw DataError("bad timeline record" + at_line(line_no) + ": " + e.what());
    } catch (const DataError& e) {
        throw DataError(std::string(e.what()) + at_line(line_no));
    }
}

std::vector<SourceTimeline> load_timelines(const std::filesystem::path& path) {
    std::vector<SourceTimeline> out;
    read_jsonl(path, [&](const json& record, int line_no) {
        out.push_back(parse_timeline(record, line_no));
    });
    return out;
}

json timeline_to_json(const SourceTimeline& timeline) {
    json words = json::array();
    for (const auto& w : timeline.words()) {
        words.push_back({{"w", w.surface}, {"start", w.start}, {"end", w.end}});
    }
    return {{"id", timeline.sentence_id()}, {"words", words}};
}

TargetEmissions parse_emissions(const json& record, int line_no) {
    try {
        TargetEmissions em;
        std::string unit = record.value("unit", "character");
        em.unit = unit == "word" ? TargetEmissions::Unit::Word : TargetEmissions::Unit::Character;
        double prev = 0.0;
        bool first = true;
        for (const auto& v : record.at("onsets")) {
            double onset = v.get<double>();
            if (!first && onset < prev) {
                throw DataError("emissions '" + record.value("id", "?") +
                                "': onsets not non-decreasing" + at_line(line_no));
            }
            em.onsets.push_back(onset);
            prev = onset;
            first = false;
        }
        return em;
    } catch (const json::exception& e) {
        throw DataError("bad emissions record" + at_line(line_no) + ": " + e.what());
    }
}

json emissions_to_json(const std::string& id, const TargetEmissions& emissions) {
    return {{"id", id},
            {"unit", emissions.unit == TargetEmissions::Unit::Word ? "word" : "character"},
            {"onsets", emissions.onsets}};
}

} // namespace simt
