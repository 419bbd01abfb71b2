#pragma once

#include <filesystem>
#include <initializer_list>
#include <sstream>
#include <string>
#include <string_view>

namespace phasemac::experiments {

inline constexpr int kCsvSchemaVersion = 1;

/// Locale-independent "%.10g". NaN prints as "nan".
std::string format_number(double v);

/// Accumulates a CSV document in memory. The first line is a comment naming
/// the schema and its version.
class CsvWriter {
 public:
  CsvWriter(std::string_view schema, std::initializer_list<std::string_view> columns);

  CsvWriter& cell(std::string_view text);
  CsvWriter& cell(double v);
  CsvWriter& cell(std::uint64_t v);
  CsvWriter& cell(std::int64_t v);
  CsvWriter& cell(int v) { return cell(static_cast<std::int64_t>(v)); }
  void end_row();

  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
  bool row_started_ = false;
};

/// Writes to `<path>.tmp` and renames over `path`, creating parent
/// directories as needed.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace phasemac::experiments
