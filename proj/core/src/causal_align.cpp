#include "simt/causal_align.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "simt/errors.hpp"

namespace simt {

namespace {

constexpr double kTimeEps = 1e-9;

} // namespace

void AlignmentSet::normalize() {
    std::sort(links.begin(), links.end());
    links.erase(std::unique(links.begin(), links.end()), links.end());
}

std::optional<int> AlignmentSet::latest_source_for(int target_index) const {
    std::optional<int> latest;
    for (const auto& [s, t] : links) {
        if (t == target_index && (!latest || s > *latest)) latest = s;
    }
    return latest;
}

void AlignmentSet::check_bounds(int source_len, int target_len) const {
    for (const auto& [s, t] : links) {
        if (s < 1 || s > source_len || t < 1 || t > target_len) {
            throw DataError("alignment link (" + std::to_string(s) + ", " + std::to_string(t) +
                            ") out of bounds for |source|=" + std::to_string(source_len) +
                            ", |target|=" + std::to_string(target_len));
        }
    }
}

std::vector<std::string> WaitMarkedTarget::words() const {
    std::vector<std::string> out;
    for (const auto& item : items) {
        if (item.kind == Item::Kind::Word) out.push_back(item.surface);
    }
    return out;
}

std::size_t WaitMarkedTarget::wait_count() const {
    std::size_t n = 0;
    for (const auto& item : items) {
        if (item.kind == Item::Kind::WaitMarker) ++n;
    }
    return n;
}

WaitMarkedTarget insert_waits(const std::vector<std::string>& target_words,
                              const AlignmentSet& alignment,
                              const SourceTimeline& timeline,
                              const SpeakingModel& speech) {
    if (timeline.empty()) throw DataError("empty source timeline");
    alignment.check_bounds(static_cast<int>(timeline.size()),
                           static_cast<int>(target_words.size()));

    WaitMarkedTarget marked;
    double stream_time = timeline.start_time(1);
    for (std::size_t i = 0; i < target_words.size(); ++i) {
        const int t = static_cast<int>(i) + 1;
        const auto anchor = alignment.latest_source_for(t);
        if (anchor) {
            const double ready = timeline.end_time(*anchor);
            if (ready > stream_time + kTimeEps) {
                marked.items.push_back({WaitMarkedTarget::Item::Kind::WaitMarker, "", anchor});
                stream_time = ready;
            }
        }
        marked.items.push_back({WaitMarkedTarget::Item::Kind::Word, target_words[i], anchor});
        stream_time += speech.duration(target_words[i]);
    }
    return marked;
}

SegmentTimetable build_timetable(const WaitMarkedTarget& marked,
                                 const SourceTimeline& timeline,
                                 const SpeakingModel& speech) {
    if (timeline.empty()) throw DataError("empty source timeline");
    const int source_len = static_cast<int>(timeline.size());

    // Split at markers. Consecutive markers fold into one constraint; the
    // binding end time is the largest among them.
    struct RawSegment {
        std::optional<double> ready; // none for the leading unanchored segment
        std::vector<std::string> words;
    };
    std::vector<RawSegment> raw;
    raw.push_back({});
    for (const auto& item : marked.items) {
        if (item.kind == WaitMarkedTarget::Item::Kind::WaitMarker) {
            if (!item.anchor || *item.anchor < 1 || *item.anchor > source_len) {
                throw DataError("wait marker anchor out of bounds: " +
                                std::to_string(item.anchor.value_or(0)));
            }
            const double ready = timeline.end_time(*item.anchor);
            if (!raw.back().words.empty() || !raw.back().ready) {
                raw.push_back({ready, {}});
            } else {
                raw.back().ready = std::max(*raw.back().ready, ready);
            }
        } else {
            raw.back().words.push_back(item.surface);
        }
    }

    SegmentTimetable table;
    double finish = 0.0;
    for (const auto& seg : raw) {
        if (seg.words.empty()) continue;
        const double candidate = seg.ready ? *seg.ready : timeline.start_time(1);
        double seg_duration = 0.0;
        for (const auto& w : seg.words) seg_duration += speech.duration(w);

        if (!table.segments.empty() && candidate <= finish + kTimeEps) {
            // The anchoring source word was already spoken when the previous
            // segment finishes: merge and keep speaking.
            auto& prev = table.segments.back();
            prev.words.insert(prev.words.end(), seg.words.begin(), seg.words.end());
            finish += seg_duration;
        } else {
            table.segments.push_back({candidate, seg.words});
            finish = candidate + seg_duration;
        }
    }
    return table;
}

TargetEmissions emissions_from_timetable(const SegmentTimetable& table,
                                         const SpeakingModel& speech) {
    TargetEmissions em;
    em.unit = speech.profile == LangProfile::SpaceTokenized ? TargetEmissions::Unit::Word
                                                            : TargetEmissions::Unit::Character;
    double clock = -std::numeric_limits<double>::infinity();
    for (const auto& seg : table.segments) {
        std::size_t pos = 0;
        for (const auto& word : seg.words) {
            for (std::size_t u = 0; u < speech.unit_count(word); ++u) {
                double onset = seg.onset + static_cast<double>(pos) * speech.seconds_per_unit;
                clock = std::max(clock, onset);
                em.onsets.push_back(clock);
                ++pos;
            }
        }
    }
    return em;
}

std::vector<std::string> SegmentTimetable::words() const {
    std::vector<std::string> out;
    for (const auto& seg : segments) {
        out.insert(out.end(), seg.words.begin(), seg.words.end());
    }
    return out;
}

// --- file formats ----------------------------------------------------------

namespace {

std::string at_line(int line_no) {
    return line_no > 0 ? " (line " + std::to_string(line_no) + ")" : "";
}

} // namespace

AlignmentSet parse_alignment(const json& record, int line_no) {
    try {
        AlignmentSet alignment;
        for (const auto& pair : record.at("pairs")) {
            if (!pair.is_array() || pair.size() != 2) {
                throw DataError("alignment pair must be [source, target]" + at_line(line_no));
            }
            alignment.links.emplace_back(pair[0].get<int>() + 1, pair[1].get<int>() + 1);
        }
        alignment.normalize();
        return alignment;
    } catch (const json::exception& e) {
        throw DataError("bad alignment record" + at_line(line_no) + ": " + e.what());
    }
}

json alignment_to_json(const std::string& id, const AlignmentSet& alignment) {
    json pairs = json::array();
    for (const auto& [s, t] : alignment.links) pairs.push_back({s - 1, t - 1});
    return {{"id", id}, {"pairs", pairs}};
}

WaitMarkedTarget parse_marked(const json& record, int line_no) {
    try {
        WaitMarkedTarget marked;
        for (const auto& item : record.at("items")) {
            WaitMarkedTarget::Item out;
            const std::string kind = item.at("kind").get<std::string>();
            if (kind == "wait") {
                out.kind = WaitMarkedTarget::Item::Kind::WaitMarker;
            } else if (kind == "word") {
                out.kind = WaitMarkedTarget::Item::Kind::Word;
                out.surface = item.at("w").get<std::string>();
            } else {
                throw DataError("unknown item kind '" + kind + "'" + at_line(line_no));
            }
            if (item.contains("anchor") && !item.at("anchor").is_null()) {
                out.anchor = item.at("anchor").get<int>() + 1;
            }
            if (out.kind == WaitMarkedTarget::Item::Kind::WaitMarker && !out.anchor) {
                throw DataError("wait marker without anchor" + at_line(line_no));
            }
            marked.items.push_back(std::move(out));
        }
        return marked;
    } catch (const json::exception& e) {
        throw DataError("bad wait-marked record" + at_line(line_no) + ": " + e.what());
    }
}

json marked_to_json(const std::string& id, const WaitMarkedTarget& marked) {
    json items = json::array();
    for (const auto& item : marked.items) {
        json j;
        j["kind"] = item.kind == WaitMarkedTarget::Item::Kind::WaitMarker ? "wait" : "word";
        j["w"] = item.surface;
        if (item.anchor) {
            j["anchor"] = *item.anchor - 1;
        } else {
            j["anchor"] = nullptr;
        }
        items.push_back(std::move(j));
    }
    return {{"id", id}, {"items", items}};
}

SegmentTimetable parse_timetable(const json& record, int line_no) {
    try {
        SegmentTimetable table;
        double prev = 0.0;
        bool first = true;
        for (const auto& seg : record.at("segments")) {
            SegmentTimetable::Segment out;
            out.onset = seg.at("onset").get<double>();
            for (const auto& w : seg.at("words")) out.words.push_back(w.get<std::string>());
            if (!first && out.onset <= prev) {
                throw DataError("timetable onsets not strictly increasing" + at_line(line_no));
            }
            prev = out.onset;
            first = false;
            table.segments.push_back(std::move(out));
        }
        return table;
    } catch (const json::exception& e) {
        throw DataError("bad timetable record" + at_line(line_no) + ": " + e.what());
    }
}

json timetable_to_json(const std::string& id, const SegmentTimetable& table) {
    json segments = json::array();
    for (const auto& seg : table.segments) {
        segments.push_back({{"onset", seg.onset}, {"words", seg.words}});
    }
    return {{"id", id}, {"segments", segments}};
}

} // namespace simt
