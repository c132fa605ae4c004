#pragma once

// JSON and CSV serialization of check reports and sweep tables.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "subpoisson/verify.hpp"

namespace subpoisson {

/// Value of the leading schema_version column in every CSV.
inline constexpr std::string_view kCsvSchemaVersion = "1";

/// RFC 4180 field quoting: fields containing a comma, quote, CR or LF are
/// wrapped in quotes with inner quotes doubled.
std::string csv_field(std::string_view field);
/// Joins fields with commas and terminates with CRLF.
std::string csv_line(const std::vector<std::string>& fields);

/// Header "schema_version,<columns...>" and one line per row.
std::string to_csv(const std::vector<std::string>& columns,
                   const std::vector<std::vector<std::string>>& rows);

std::string report_to_json(const CheckReport& report);
std::string report_to_csv(const CheckReport& report);
/// Name, pass flag and worst margin of every report, in order.
std::string summary_to_json(const std::vector<CheckReport>& reports);

/// Writes <check_name>.json and <check_name>.csv per report plus
/// summary.json into `dir` (created if missing). Returns the written paths.
std::vector<std::filesystem::path> write_reports(const std::filesystem::path& dir,
                                                 const std::vector<CheckReport>& reports);

/// Writes `contents` to `path` in binary mode; throws Error on failure.
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace subpoisson
