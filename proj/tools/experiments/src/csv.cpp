#include "phasemac/experiments/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "phasemac/errors.hpp"

namespace phasemac::experiments {

std::string format_number(double v) {
  if (std::isnan(v)) {
    return "nan";
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

CsvWriter::CsvWriter(std::string_view schema, std::initializer_list<std::string_view> columns) {
  out_ << "# phasemac " << schema << " v" << kCsvSchemaVersion << '\n';
  bool first = true;
  for (auto c : columns) {
    out_ << (first ? "" : ",") << c;
    first = false;
  }
  out_ << '\n';
}

CsvWriter& CsvWriter::cell(std::string_view text) {
  if (row_started_) {
    out_ << ',';
  }
  out_ << text;
  row_started_ = true;
  return *this;
}

CsvWriter& CsvWriter::cell(double v) { return cell(std::string_view(format_number(v))); }
CsvWriter& CsvWriter::cell(std::uint64_t v) { return cell(std::string_view(std::to_string(v))); }
CsvWriter& CsvWriter::cell(std::int64_t v) { return cell(std::string_view(std::to_string(v))); }

void CsvWriter::end_row() {
  out_ << '\n';
  row_started_ = false;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error("cannot open " + tmp.string() + " for writing");
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) {
      throw Error("failed writing " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace phasemac::experiments
