#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "simt/jsonl.hpp"

namespace simt {

// One source word with its spoken interval, in seconds from utterance start.
struct TimedWord {
    std::string surface;
    double start = 0.0;
    double end = 0.0; // t_j of the word; end >= start >= 0
};

// The reference time axis: source words whose end times are non-decreasing.
// Immutable after construction; all latency math indexes it 1-based.
class SourceTimeline {
public:
    SourceTimeline() = default;
    // Validates end >= start >= 0 per word and monotone non-decreasing ends.
    SourceTimeline(std::string sentence_id, std::vector<TimedWord> words);

    const std::string& sentence_id() const { return sentence_id_; }
    const std::vector<TimedWord>& words() const { return words_; }
    std::size_t size() const { return words_.size(); }
    bool empty() const { return words_.empty(); }

    // 1-based accessors matching the math-layer convention.
    const TimedWord& word(int index) const { return words_.at(static_cast<std::size_t>(index - 1)); }
    double end_time(int index) const { return word(index).end; }
    double start_time(int index) const { return word(index).start; }

    std::vector<std::string> surfaces() const;

private:
    std::string sentence_id_;
    std::vector<TimedWord> words_;
};

// Onset times of generated target units (words or characters), non-decreasing.
struct TargetEmissions {
    enum class Unit { Word, Character };
    Unit unit = Unit::Character;
    std::vector<double> onsets; // tau_t, 1-based in the math layer

    std::size_t size() const { return onsets.size(); }
    bool empty() const { return onsets.empty(); }
};

// TimeAtIndex: maps a fractional 1-based source index onto the time axis by
// linear interpolation between word end times, clamped to [t_1, t_|X|].
double time_at_index(double x, const SourceTimeline& timeline);

// --- file formats ---------------------------------------------------------
// Source timestamps, one sentence per line:
//   {"id": "...", "words": [{"w": "...", "start": 0.0, "end": 0.42}, ...]}
// Non-monotone end times are rejected with the offending line number.

SourceTimeline parse_timeline(const json& record, int line_no = 0);
std::vector<SourceTimeline> load_timelines(const std::filesystem::path& path);
json timeline_to_json(const SourceTimeline& timeline);

// Emissions, one sentence per line:
//   {"id": "...", "unit": "word"|"character", "onsets": [...]}
TargetEmissions parse_emissions(const json& record, int line_no = 0);
json emissions_to_json(const std::string& id, const TargetEmissions& emissions);

} // namespace simt
