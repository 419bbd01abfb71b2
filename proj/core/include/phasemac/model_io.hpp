#pragma once

#include <filesystem>
#include <istream>
#include <ostream>

#include "phasemac/fc_model.hpp"

namespace phasemac::nn {

inline constexpr char kModelMagic[4] = {'P', 'H', 'F', 'C'};
inline constexpr std::uint32_t kModelFormatVersion = 1;

/// Binary layout (all integers u32 little-endian, floats IEEE-754 binary32
/// little-endian), documented in docs/model_format.md:
///
///   "PHFC" | version | layer_count L | dims[L+1] | activation u8[L] |
///   for each layer: weights[out*in] row-major, bias[out]
void save_model(const FcModel& model, std::ostream& out);
void save_model(const FcModel& model, const std::filesystem::path& path);

/// Throws FormatError with the offset of the first bad byte.
FcModel load_model(std::istream& in);
FcModel load_model(const std::filesystem::path& path);

}  // namespace phasemac::nn
