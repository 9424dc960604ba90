#include "output.hpp"

#include "iontrap/errors.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>

namespace iontrap::cli {

std::string format_number(double value) {
  if (value == 0.0)
    return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

Json json_number(double value) {
  if (!std::isfinite(value))
    return nullptr;
  return std::strtod(format_number(value).c_str(), nullptr);
}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header_.size())
    throw std::logic_error("CSV row width does not match header");
  rows_.push_back(std::move(cells));
}

void CsvTable::write(std::ostream &out) const {
  const auto line = [&](const std::vector<std::string> &cells) {
    for (std::size_t i = 0; i < cells.size(); ++i)
      out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(header_);
  for (const auto &row : rows_)
    line(row);
}

Json RunManifest::to_json() const {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["subcommand"] = subcommand;
  j["parameters"] = parameters;
  j["outputs"] = outputs;
  j["tool_version"] = tool_version;
  j["timestamp"] = timestamp;
  return j;
}

std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  if (const char *epoch = std::getenv("SOURCE_DATE_EPOCH"))
    now = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void emit(const std::string &text, const std::optional<std::filesystem::path> &path,
          std::ostream &fallback) {
  if (!path) {
    fallback << text;
    return;
  }
  if (path->has_parent_path())
    std::filesystem::create_directories(path->parent_path());
  std::ofstream out(*path, std::ios::binary);
  if (!out)
    throw DomainError("cannot write '" + path->string() + "'");
  out << text;
}

void write_manifest(const RunManifest &manifest, const std::filesystem::path &output) {
  std::filesystem::path sidecar = output;
  sidecar += ".manifest.json";
  std::ofstream out(sidecar, std::ios::binary);
  if (!out)
    throw DomainError("cannot write '" + sidecar.string() + "'");
  out << manifest.to_json().dump(2) << '\n';
}

} // namespace iontrap::cli
