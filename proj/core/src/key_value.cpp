#include "phasemac/key_value.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <string>

#include "phasemac/errors.hpp"

namespace phasemac {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::vector<KeyValue> parse_key_values(std::istream& in) {
  std::vector<KeyValue> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') {
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw FormatError("config line " + std::to_string(line_no) + " has no '='", line_no);
    }
    out.push_back({std::string(trim(body.substr(0, eq))), std::string(trim(body.substr(eq + 1))),
                   line_no});
  }
  return out;
}

std::vector<KeyValue> parse_key_values_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open config file " + path.string());
  }
  return parse_key_values(in);
}

double parse_double(std::string_view text, std::string_view what) {
  // std::from_chars for double is available from GCC 11.
  double v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
    throw Error("invalid number for " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return v;
}

long long parse_int(std::string_view text, std::string_view what) {
  long long v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw Error("invalid integer for " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace phasemac
