#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "simt/jsonl.hpp"

namespace simt {

inline constexpr const char* kToolVersion = "0.1.0";

// Every command writes its effective configuration ahead of its results so a
// report is reproducible from its own header. Deliberately carries no
// timestamps: replayed runs must be byte-identical.
json run_header(const std::string& command, const json& config);

// Header line followed by one record per line.
void write_report(const std::filesystem::path& path, const json& header,
                  const std::vector<json>& rows);

// Monospace table with left-aligned first column and right-aligned rest.
std::string render_table(const std::vector<std::string>& columns,
                         const std::vector<std::vector<std::string>>& rows);

std::string format_fixed(double value, int decimals);

} // namespace simt
