#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace simt {

// How target-side text is split into scoring/speaking units.
//   SpaceTokenized : whitespace-delimited words (de targets)
//   CharacterZh    : individual code points, whitespace ignored (zh targets)
enum class LangProfile {
    SpaceTokenized,
    CharacterZh,
};

LangProfile lang_profile_from_name(std::string_view name); // "de"/"zh" or long names
std::string lang_profile_name(LangProfile profile);

// Units of one text under a profile: words, or non-space code points.
std::vector<std::string> profile_units(std::string_view text, LangProfile profile);

// Fragments of incremental output are space-joined for word targets and
// concatenated directly for character targets.
std::string join_fragments(const std::vector<std::string>& fragments, LangProfile profile);

// Constant-rate speech pacing. The onset scheduler and trace replay both
// need to know how long spoken target text occupies the stream; timestamped
// corpora carry no target durations, so the rate is declared configuration
// and echoed into every report header.
struct SpeakingModel {
    LangProfile profile = LangProfile::CharacterZh;
    double seconds_per_unit = 0.25;

    static SpeakingModel for_profile(LangProfile profile) {
        if (profile == LangProfile::SpaceTokenized) return {profile, 0.30};
        return {profile, 0.25};
    }

    std::size_t unit_count(std::string_view text) const {
        return profile_units(text, profile).size();
    }

    double duration(std::string_view text) const {
        return static_cast<double>(unit_count(text)) * seconds_per_unit;
    }
};

} // namespace simt
