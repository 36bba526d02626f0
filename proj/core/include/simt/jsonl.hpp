#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

namespace simt {

using json = nlohmann::json;

// Calls fn(record, line_number) for every non-empty line. Lines holding a
// top-level "_header" key (run headers) are skipped. Parse failures raise
// DataError with "<file>:<line>:" context.
void read_jsonl(const std::filesystem::path& path,
                const std::function<void(const json&, int)>& fn);

std::vector<json> read_jsonl(const std::filesystem::path& path);

// One compact record per line. Keys are emitted in sorted order
// (nlohmann default), so identical records serialize byte-identically.
void write_jsonl(const std::filesystem::path& path, const std::vector<json>& records);

void append_jsonl(std::ostream& out, const json& record);

std::string read_text_file(const std::filesystem::path& path);

// Non-empty lines of a plain text file, in order.
std::vector<std::string> read_lines(const std::filesystem::path& path);

} // namespace simt
