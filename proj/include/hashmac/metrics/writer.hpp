#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hashmac/metrics/report.hpp"

namespace hashmac {

enum class ReportFormat : std::uint8_t { Csv, Json, Both };

std::optional<ReportFormat> parse_report_format(std::string_view text);

/// Shortest round-trip text for a double.
std::string format_number(double value);

/// One `metric,slice,value` CSV row builder with a fixed header.
class CsvRows {
 public:
  CsvRows();
  void add(std::string_view metric, std::string_view slice, std::string_view value);
  void add(std::string_view metric, std::string_view slice, std::uint64_t value);
  void add(std::string_view metric, std::string_view slice, double value);
  const std::string& str() const { return text_; }

 private:
  std::string text_;
};

/// `metric,slice,value` rows in a fixed order; byte-stable for a fixed run.
std::string to_csv(const MetricsReport& report);

/// JSON object whose keys mirror the MetricsReport fields.
std::string to_json(const MetricsReport& report);
MetricsReport report_from_json(const std::string& text);

/// `<scenario>_<mode>_<seed>`
std::string report_stem(const MetricsReport& report);

/// Writes through a temporary file and renames it into place, so a failure
/// never leaves a partial file behind. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// Writes `<stem>.csv` and/or `<stem>.json` into `out_dir`; returns the paths.
std::vector<std::filesystem::path> write_report(const MetricsReport& report, const std::filesystem::path& out_dir,
                                                ReportFormat format);

}  // namespace hashmac
