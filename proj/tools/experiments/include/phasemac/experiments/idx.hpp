#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <span>
#include <vector>

namespace phasemac::experiments {

inline constexpr std::uint32_t kIdxImagesMagic = 2051;  // ubyte, 3 dims
inline constexpr std::uint32_t kIdxLabelsMagic = 2049;  // ubyte, 1 dim

/// Unsigned-byte IDX array (big-endian header).
struct IdxArray {
  std::vector<std::uint32_t> dims;
  std::vector<std::uint8_t> data;
};

/// Reads an IDX file and checks its magic number. Throws FormatError with the
/// offset of the first malformed byte: a wrong magic byte, a truncated header
/// or payload (offset = first missing byte), or trailing garbage.
IdxArray read_idx(std::istream& in, std::uint32_t expected_magic);
IdxArray read_idx(const std::filesystem::path& path, std::uint32_t expected_magic);

struct MnistSet {
  std::size_t rows = 28;
  std::size_t cols = 28;
  std::vector<std::uint8_t> pixels;  // count * rows * cols
  std::vector<std::uint8_t> labels;

  std::size_t size() const noexcept { return labels.size(); }
  std::size_t pixels_per_image() const noexcept { return rows * cols; }
  std::span<const std::uint8_t> image(std::size_t i) const {
    return {pixels.data() + i * pixels_per_image(), pixels_per_image()};
  }
};

/// Loads `<dir>/<prefix>-images-idx3-ubyte` and `<dir>/<prefix>-labels-idx1-ubyte`
/// (prefix "train" or "t10k"). Labels above 9 are reported as malformed.
MnistSet load_mnist(const std::filesystem::path& dir, std::string_view prefix);

void write_idx(std::ostream& out, std::uint32_t magic, std::span<const std::uint32_t> dims,
               std::span<const std::uint8_t> data);

}  // namespace phasemac::experiments
