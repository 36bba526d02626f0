#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace simt {

// Split a UTF-8 string into code points (each returned as its own string).
// Invalid bytes are passed through one byte at a time rather than rejected;
// timestamped ASR text is occasionally mangled and scoring must not abort.
std::vector<std::string> utf8_codepoints(std::string_view text);

std::size_t utf8_length(std::string_view text);

// True for ASCII whitespace and U+3000 (ideographic space).
bool is_space_codepoint(std::string_view cp);

// All whitespace code points removed.
std::string strip_whitespace(std::string_view text);

} // namespace simt
