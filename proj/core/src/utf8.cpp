#include "simt/utf8.hpp"

namespace simt {

namespace {

// Length of the UTF-8 sequence starting at byte b, 1 if malformed.
std::size_t seq_len(unsigned char b) {
    if ((b & 0x80u) == 0x00u) return 1;
    if ((b & 0xE0u) == 0xC0u) return 2;
    if ((b & 0xF0u) == 0xE0u) return 3;
    if ((b & 0xF8u) == 0xF0u) return 4;
    return 1;
}

} // namespace

std::vector<std::string> utf8_codepoints(std::string_view text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < text.size()) {
        std::size_t n = seq_len(static_cast<unsigned char>(text[i]));
        if (i + n > text.size()) n = 1;
        for (std::size_t k = 1; k < n; ++k) {
            if ((static_cast<unsigned char>(text[i + k]) & 0xC0u) != 0x80u) {
                n = 1;
                break;
            }
        }
        out.emplace_back(text.substr(i, n));
        i += n;
    }
    return out;
}

std::size_t utf8_length(std::string_view text) {
    std::size_t count = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        std::size_t n = seq_len(static_cast<unsigned char>(text[i]));
        if (i + n > text.size()) n = 1;
        i += n;
        ++count;
    }
    return count;
}

bool is_space_codepoint(std::string_view cp) {
    if (cp.size() == 1) {
        char c = cp[0];
        return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
    }
    return cp == "\xE3\x80\x80"; // U+3000
}

std::string strip_whitespace(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (const auto& cp : utf8_codepoints(text)) {
        if (!is_space_codepoint(cp)) out += cp;
    }
    return out;
}

} // namespace simt
