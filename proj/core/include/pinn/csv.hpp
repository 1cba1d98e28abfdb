#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace pinn {

/// Shortest decimal form that round-trips a double exactly (%.17g).
std::string format_g17(double v);

/// Minimal reader for the project's own CSV files: splits on commas, skips
/// blank lines and '#' comments. The first non-comment row is the header.
struct CsvFile {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

CsvFile read_csv(const std::filesystem::path& path);

double parse_double(const std::string& field);

} // namespace pinn
