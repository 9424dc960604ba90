#pragma once

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace iontrap::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

enum class Format { csv, json };

/// %.12g
std::string format_number(double value);

/// Value rounded to 12 significant digits so the JSON dump prints at most
/// that many. Non-finite values become null.
Json json_number(double value);

class CsvTable {
public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<std::string> cells);
  void write(std::ostream &out) const;

private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Sidecar record written next to every output file as
/// "<output>.manifest.json". The timestamp honours SOURCE_DATE_EPOCH when it
/// is set, so reruns can be made byte-identical too.
struct RunManifest {
  std::string subcommand;
  Json parameters = Json::object();
  std::vector<std::string> outputs;
  std::string tool_version;
  std::string timestamp;

  Json to_json() const;
};

std::string utc_timestamp();

/// Writes `text` to the file (creating parent directories), or to `fallback`
/// when no path is given.
void emit(const std::string &text, const std::optional<std::filesystem::path> &path,
          std::ostream &fallback);

void write_manifest(const RunManifest &manifest, const std::filesystem::path &output);

} // namespace iontrap::cli
