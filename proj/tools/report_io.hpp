#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

namespace selberg::cli {

inline constexpr int kSchemaVersion = 1;

/// Compact-indented JSON with sorted keys, floats printed with 17
/// significant digits and non-finite numbers as null.
std::string to_json_text(const nlohmann::json& doc);

/// "%.17g"
std::string format_double(double value);

/// Writes to `path` through a sibling temporary file and a rename, so the
/// target is either the old file or the complete new one.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace selberg::cli
