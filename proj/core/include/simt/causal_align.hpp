#pragma once

#include <optional>
#include <string>
#include <vector>

#include "simt/lang.hpp"
#include "simt/timeline.hpp"

namespace simt {

// Word-level source<->target links, 1-based. A target index may carry zero
// or more links; duplicates are collapsed.
struct AlignmentSet {
    std::vector<std::pair<int, int>> links; // (source_index, target_index)

    void normalize(); // sort + dedup
    // Latest aligned source index for a target word, if any.
    std::optional<int> latest_source_for(int target_index) const;
    // Throws DataError naming the offending pair if any index is out of bounds.
    void check_bounds(int source_len, int target_len) const;
};

// Target word sequence with wait markers interleaved. Removing markers
// recovers the original words; each marker carries the source index whose
// end time it waits for. Aligned words also carry their own anchor so the
// causality of a schedule can be audited downstream.
struct WaitMarkedTarget {
    struct Item {
        enum class Kind { Word, WaitMarker };
        Kind kind = Kind::Word;
        std::string surface;          // empty for markers
        std::optional<int> anchor;    // 1-based source index
    };
    std::vector<Item> items;

    std::vector<std::string> words() const;
    std::size_t wait_count() const;
};

// Target word groups with the wall-clock onset at which each group starts
// being spoken. Onsets are strictly increasing; concatenating the groups
// reproduces the target word sequence.
struct SegmentTimetable {
    struct Segment {
        double onset = 0.0;
        std::vector<std::string> words;
    };
    std::vector<Segment> segments;

    std::vector<std::string> words() const;
};

// Inserts a wait marker before a target word exactly when the end time of
// its latest aligned source word exceeds the effective speaking time of the
// stream at that point. The stream starts at the first source word's start
// time, jumps to the anchored end time whenever a marker is inserted, and
// advances by the speaking model's duration for every word spoken. Unaligned
// words inherit the constraint of the most recent anchored word.
WaitMarkedTarget insert_waits(const std::vector<std::string>& target_words,
                              const AlignmentSet& alignment,
                              const SourceTimeline& timeline,
                              const SpeakingModel& speech);

// Wait markers partition the target into segments. A segment anchored at
// source word W is a candidate to start once W has been spoken; if that time
// has already passed when the previous segment finishes speaking, the
// segment merges into the previous one, otherwise it is scheduled at W's
// end time. A leading unanchored segment starts with the source audio.
SegmentTimetable build_timetable(const WaitMarkedTarget& marked,
                                 const SourceTimeline& timeline,
                                 const SpeakingModel& speech);

// Expands a timetable to per-unit onsets: each unit of a segment starts at
// the segment onset plus its position times the per-unit duration. Onsets
// are clamped monotone for hand-built timetables whose segments overrun.
TargetEmissions emissions_from_timetable(const SegmentTimetable& table,
                                         const SpeakingModel& speech);

// --- file formats (indices 0-based on disk, converted at the boundary) ----
// Alignment:  {"id": "...", "pairs": [[s, t], ...]}
// Marked:     {"id": "...", "items": [{"kind": "word"|"wait", "w": "...", "anchor": 3|null}]}
// Timetable:  {"id": "...", "segments": [{"onset": 1.5, "words": [...]}]}

AlignmentSet parse_alignment(const json& record, int line_no = 0);
json alignment_to_json(const std::string& id, const AlignmentSet& alignment);

WaitMarkedTarget parse_marked(const json& record, int line_no = 0);
json marked_to_json(const std::string& id, const WaitMarkedTarget& marked);

SegmentTimetable parse_timetable(const json& record, int line_no = 0);
json timetable_to_json(const std::string& id, const SegmentTimetable& table);

} // namespace simt
