#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace phasemac {

struct KeyValue {
  std::string key;
  std::string value;
  int line = 0;
};

/// Parses `key = value` lines. Blank lines and lines starting with '#' are
/// skipped; surrounding whitespace is trimmed. Throws FormatError (offset is
/// the 1-based line number) for a line without '='.
std::vector<KeyValue> parse_key_values(std::istream& in);
std::vector<KeyValue> parse_key_values_file(const std::filesystem::path& path);

double parse_double(std::string_view text, std::string_view what);
long long parse_int(std::string_view text, std::string_view what);

}  // namespace phasemac
