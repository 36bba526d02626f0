#include "simt/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "simt/errors.hpp"

namespace simt {

json run_header(const std::string& command, const json& config) {
    return {{"_header",
             {{"tool", "simt"}, {"version", kToolVersion}, {"command", command},
              {"config", config}}}};
}

void write_report(const std::filesystem::path& path, const json& header,
                  const std::vector<json>& rows) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    out << header.dump() << '\n';
    for (const auto& row : rows) out << row.dump() << '\n';
}

std::string render_table(const std::vector<std::string>& columns,
                         const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> widths(columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) widths[c] = columns[c].size();
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size() && c < widths.size(); ++c) {
            widths[c] = std::max(widths[c], row[c].size());
        }
    }
    std::ostringstream out;
    auto emit_row = [&](const std::vector<std::string>& row) {
        for (std::size_t c = 0; c < widths.size(); ++c) {
            const std::string cell = c < row.size() ? row[c] : "";
            if (c == 0) {
                out << cell << std::string(widths[c] - cell.size(), ' ');
            } else {
                out << "  " << std::string(widths[c] - cell.size(), ' ') << cell;
            }
        }
        out << '\n';
    };
    emit_row(columns);
    std::size_t total = 0;
    for (std::size_t c = 0; c < widths.size(); ++c) total += widths[c] + (c ? 2 : 0);
    out << std::string(total, '-') << '\n';
    for (const auto& row : rows) emit_row(row);
    return out.str();
}

std::string format_fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    return buf;
}

} // namespace simt
