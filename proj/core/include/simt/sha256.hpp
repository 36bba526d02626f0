#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace simt {

// FIPS 180-4 SHA-256.
std::array<std::uint8_t, 32> sha256(std::string_view data);

std::string sha256_hex(std::string_view data);

// First 16 hex chars of SHA-256. Non-reversible, stable identifier for
// batch requests keyed on normalized sentence text.
std::string content_id(std::string_view normalized_text);

} // namespace simt
