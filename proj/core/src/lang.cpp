#include "simt/lang.hpp"

#include <sstream>

#include "simt/errors.hpp"
#include "simt/utf8.hpp"

namespace simt {

LangProfile lang_profile_from_name(std::string_view name) {
    if (name == "zh" || name == "character_zh" || name == "character")
        return LangProfile::CharacterZh;
    if (name == "de" || name == "space_tokenized" || name == "word")
        return LangProfile::SpaceTokenized;
    throw DataError("unknown language profile: " + std::string(name));
}

std::string lang_profile_name(LangProfile profile) {
    return profile == LangProfile::CharacterZh ? "character_zh" : "space_tokenized";
}

std::vector<std::string> profile_units(std::string_view text, LangProfile profile) {
    std::vector<std::string> units;
    if (profile == LangProfile::SpaceTokenized) {
        std::istringstream ss{std::string(text)};
        std::string tok;
        while (ss >> tok) units.push_back(tok);
        return units;
    }
    for (auto& cp : utf8_codepoints(text)) {
        if (!is_space_codepoint(cp)) units.push_back(std::move(cp));
    }
    return units;
}

std::string join_fragments(const std::vector<std::string>& fragments, LangProfile profile) {
    std::string out;
    for (std::size_t i = 0; i < fragments.size(); ++i) {
        if (profile == LangProfile::SpaceTokenized && i > 0 && !out.empty() &&
            !fragments[i].empty()) {
            out += ' ';
        }
        out += fragments[i];
    }
    return out;
}

} // namespace simt
