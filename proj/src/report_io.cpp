#include "subpoisson/report_io.hpp"

#include <fstream>

#include "json.hpp"
#include "subpoisson/errors.hpp"

namespace subpoisson {
namespace {

using Json = nlohmann::ordered_json;

Json named_values(const std::vector<NamedValue>& values) {
  Json out = Json::object();
  for (const NamedValue& v : values) out[v.name] = v.value.to_string(kJsonDigits);
  return out;
}

}  // namespace

std::string csv_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out += ',';
    out += csv_field(fields[i]);
  }
  out += "\r\n";
  return out;
}

std::string to_csv(const std::vector<std::string>& columns,
                   const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::string> header{"schema_version"};
  header.insert(header.end(), columns.begin(), columns.end());
  std::string out = csv_line(header);
  for (const auto& row : rows) {
    if (row.size() != columns.size()) throw Error("CSV row width does not match header");
    std::vector<std::string> line{std::string(kCsvSchemaVersion)};
    line.insert(line.end(), row.begin(), row.end());
    out += csv_line(line);
  }
  return out;
}

std::string report_to_json(const CheckReport& r) {
  Json j;
  j["check_name"] = r.check_name;
  j["grid"] = r.grid;
  j["tolerance"] = r.tolerance.to_string(kJsonDigits);
  j["worst_margin"] = r.worst_margin.to_string(kJsonDigits);
  j["worst_point"] = named_values(r.worst_point);
  j["passed"] = r.passed;
  j["strict"] = r.strict;
  j["report_only"] = r.report_only;
  j["precision_bits"] = r.precision_bits;
  j["escalated"] = r.escalated;
  j["workers"] = r.workers;
  j["point_count"] = r.point_count;
  j["notes"] = r.notes;
  Json findings = Json::array();
  for (const Finding& f : r.findings) {
    Json item;
    item["inequality"] = f.inequality;
    item["point"] = named_values(f.point);
    item["margin"] = f.margin.to_string(kJsonDigits);
    findings.push_back(std::move(item));
  }
  j["findings"] = std::move(findings);
  return j.dump(2) + "\n";
}

std::string report_to_csv(const CheckReport& r) { return to_csv(r.columns, r.rows); }

std::string summary_to_json(const std::vector<CheckReport>& reports) {
  Json checks = Json::array();
  bool all_passed = true;
  for (const CheckReport& r : reports) {
    Json item;
    item["check_name"] = r.check_name;
    item["passed"] = r.passed;
    item["report_only"] = r.report_only;
    item["worst_margin"] = r.worst_margin.to_string(kJsonDigits);
    checks.push_back(std::move(item));
    if (!r.report_only && !r.passed) all_passed = false;
  }
  Json j;
  j["passed"] = all_passed;
  j["checks"] = std::move(checks);
  return j.dump(2) + "\n";
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error("failed writing " + path.string());
}

std::vector<std::filesystem::path> write_reports(const std::filesystem::path& dir,
                                                 const std::vector<CheckReport>& reports) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  for (const CheckReport& r : reports) {
    const auto json_path = dir / (r.check_name + ".json");
    const auto csv_path = dir / (r.check_name + ".csv");
    write_file(json_path, report_to_json(r));
    write_file(csv_path, report_to_csv(r));
    written.push_back(json_path);
    written.push_back(csv_path);
  }
  const auto summary = dir / "summary.json";
  write_file(summary, summary_to_json(reports));
  written.push_back(summary);
  return written;
}

}  // namespace subpoisson
