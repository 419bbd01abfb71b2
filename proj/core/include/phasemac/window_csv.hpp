#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <vector>

namespace phasemac::nn {

/// One window per line, comma separated, no header. Floats are written with
/// enough digits to round-trip.
void write_windows_csv(std::ostream& out, const std::vector<std::vector<float>>& windows);

/// Lines starting with '#' are skipped. Throws FormatError (offset = 1-based
/// line number) on a bad number or a row whose width differs from the first.
std::vector<std::vector<float>> read_windows_csv(std::istream& in);
std::vector<std::vector<float>> read_windows_csv(const std::filesystem::path& path);

}  // namespace phasemac::nn
