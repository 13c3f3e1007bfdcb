#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace vbp::data {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<int> line_numbers; // 1-based source line of each row
};

/// Comma-separated text with a header row. Fields may be wrapped in double
/// quotes ("" escapes a quote inside). Every row must have as many fields
/// as the header; blank lines are skipped.
CsvTable parse_csv(std::string_view text);
CsvTable read_csv(const std::filesystem::path& path);

/// Quotes a field only when it contains a comma, quote or newline.
std::string csv_field(std::string_view s);
std::string csv_line(const std::vector<std::string>& fields);

} // namespace vbp::data
