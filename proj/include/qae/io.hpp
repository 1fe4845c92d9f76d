#pragma once

#include <filesystem>
#include <string>

namespace qae {

// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

// 17 significant digits, so the text parses back to the identical double.
std::string format_double(double v);

}  // namespace qae
