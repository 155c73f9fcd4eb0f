#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace skald {

std::vector<std::string> csv_parse_line(const std::string& line);
std::string csv_format_row(const std::vector<std::string>& fields);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(const std::filesystem::path& path);
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

/// Expands a pattern whose last component may contain '*' / '?'.
/// Results are sorted lexicographically (chunk order).
std::vector<std::filesystem::path> expand_glob(const std::string& pattern);

} // namespace skald
