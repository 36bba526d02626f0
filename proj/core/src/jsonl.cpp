#include "simt/jsonl.hpp"

#include <fstream>
#include <sstream>

#include "simt/errors.hpp"

namespace simt {

void read_jsonl(const std::filesystem::path& path,
                const std::function<void(const json&, int)>& fn) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json record;
        try {
            record = json::parse(line);
        } catch (const json::exception& e) {
            throw DataError(path.string() + ":" + std::to_string(line_no) +
                            ": invalid JSON: " + e.what());
        }
        if (record.is_object() && record.contains("_header")) continue;
        fn(record, line_no);
    }
}

std::vector<json> read_jsonl(const std::filesystem::path& path) {
    std::vector<json> records;
    read_jsonl(path, [&](const json& r, int) { records.push_back(r); });
    return records;
}

void write_jsonl(const std::filesystem::path& path, const std::vector<json>& records) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    for (const auto& r : records) out << r.dump() << '\n';
}

void append_jsonl(std::ostream& out, const json& record) {
    out << record.dump() << '\n';
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

} // namespace simt
