#include "phasemac/experiments/idx.hpp"

#include <array>
#include <fstream>
#include <string>

#include "phasemac/errors.hpp"

namespace phasemac::experiments {

namespace {

constexpr std::uint64_t kMaxPayload = 1ULL << 32;

}  // namespace

IdxArray read_idx(std::istream& in, std::uint32_t expected_magic) {
  std::uint64_t offset = 0;
  auto read_exact = [&](unsigned char* dst, std::size_t n, const char* what) {
    in.read(reinterpret_cast<char*>(dst), static_cast<std::streamsize>(n));
    const auto got = static_cast<std::uint64_t>(in.gcount());
    if (got != n) {
      throw FormatError(std::string("IDX file truncated in ") + what, offset + got);
    }
    offset += n;
  };

  std::array<unsigned char, 4> magic{};
  read_exact(magic.data(), 4, "magic number");
  const std::array<unsigned char, 4> want{
      static_cast<unsigned char>(expected_magic >> 24),
      static_cast<unsigned char>(expected_magic >> 16),
      static_cast<unsigned char>(expected_magic >> 8), static_cast<unsigned char>(expected_magic)};
  for (std::size_t i = 0; i < 4; ++i) {
    if (magic[i] != want[i]) {
      throw FormatError("IDX magic mismatch: expected " + std::to_string(expected_magic), i);
    }
  }

  IdxArray arr;
  const std::size_t ndims = magic[3];
  std::uint64_t count = 1;
  for (std::size_t d = 0; d < ndims; ++d) {
    std::array<unsigned char, 4> b{};
    read_exact(b.data(), 4, "dimension header");
    const std::uint32_t v = (std::uint32_t{b[0]} << 24) | (std::uint32_t{b[1]} << 16) |
                            (std::uint32_t{b[2]} << 8) | std::uint32_t{b[3]};
    arr.dims.push_back(v);
    count *= v;
    if (count > kMaxPayload) {
      throw FormatError("IDX dimensions imply an implausible payload", offset - 4);
    }
  }
  arr.data.resize(count);
  read_exact(arr.data.data(), count, "payload");
  if (in.peek() != std::char_traits<char>::eof()) {
    throw FormatError("IDX file has trailing bytes", offset);
  }
  return arr;
}

IdxArray read_idx(const std::filesystem::path& path, std::uint32_t expected_magic) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open IDX file " + path.string() +
                " (set PHASEMAC_DATA or run scripts/fetch_mnist_subset.sh)");
  }
  try {
    return read_idx(in, expected_magic);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what(), e.offset());
  }
}

MnistSet load_mnist(const std::filesystem::path& dir, std::string_view prefix) {
  const auto images_path = dir / (std::string(prefix) + "-images-idx3-ubyte");
  const auto labels_path = dir / (std::string(prefix) + "-labels-idx1-ubyte");
  auto images = read_idx(images_path, kIdxImagesMagic);
  auto labels = read_idx(labels_path, kIdxLabelsMagic);

  constexpr std::uint64_t kLabelHeader = 8;
  for (std::size_t i = 0; i < labels.data.size(); ++i) {
    if (labels.data[i] > 9) {
      throw FormatError(labels_path.string() + ": label " + std::to_string(labels.data[i]) +
                            " out of range",
                        kLabelHeader + i);
    }
  }
  if (images.dims[0] != labels.dims[0]) {
    throw FormatError(images_path.string() + ": " + std::to_string(images.dims[0]) +
                          " images but " + std::to_string(labels.dims[0]) + " labels",
                      4);
  }
  MnistSet set;
  set.rows = images.dims[1];
  set.cols = images.dims[2];
  set.pixels = std::move(images.data);
  set.labels = std::move(labels.data);
  return set;
}

void write_idx(std::ostream& out, std::uint32_t magic, std::span<const std::uint32_t> dims,
               std::span<const std::uint8_t> data) {
  auto put = [&](std::uint32_t v) {
    const char b[4] = {static_cast<char>(v >> 24), static_cast<char>(v >> 16),
                       static_cast<char>(v >> 8), static_cast<char>(v)};
    out.write(b, 4);
  };
  put(magic);
  for (auto d : dims) {
    put(d);
  }
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
}

}  // namespace phasemac::experiments
