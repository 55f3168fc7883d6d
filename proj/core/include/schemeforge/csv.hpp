#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace schemeforge {

/// Shortest round-trip decimal form; the single number formatter shared by
/// stdout tables and CSV files.
std::string format_number(double value);

/// Creates parent directories as needed. Throws IoError.
void write_text_file(const std::filesystem::path& path, std::string_view content);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace schemeforge
