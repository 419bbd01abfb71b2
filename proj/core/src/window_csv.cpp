#include "phasemac/window_csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <string>

#include "phasemac/errors.hpp"

namespace phasemac::nn {

void write_windows_csv(std::ostream& out, const std::vector<std::vector<float>>& windows) {
  char buf[32];
  for (const auto& w : windows) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      const auto res = std::to_chars(buf, buf + sizeof(buf), w[i]);
      if (i > 0) {
        out.put(',');
      }
      out.write(buf, res.ptr - buf);
    }
    out.put('\n');
  }
}

std::vector<std::vector<float>> read_windows_csv(std::istream& in) {
  std::vector<std::vector<float>> rows;
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty() || line.front() == '#') {
      continue;
    }
    std::vector<float> row;
    const char* p = line.data();
    const char* end = p + line.size();
    while (p <= end) {
      const char* comma = std::find(p, end, ',');
      float v = 0;
      const auto res = std::from_chars(p, comma, v);
      if (res.ec != std::errc{} || res.ptr != comma || !std::isfinite(v)) {
        throw FormatError("bad number in window CSV line " + std::to_string(line_no), line_no);
      }
      row.push_back(v);
      p = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw FormatError("window CSV line " + std::to_string(line_no) + " has " +
                            std::to_string(row.size()) + " values, expected " +
                            std::to_string(rows.front().size()),
                        line_no);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::vector<float>> read_windows_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open window CSV " + path.string());
  }
  return read_windows_csv(in);
}

}  // namespace phasemac::nn
