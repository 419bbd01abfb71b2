#include "phasemac/model_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <string>

#include "phasemac/errors.hpp"

namespace phasemac::nn {

namespace {

// Dimensions beyond this are treated as corruption rather than allocated.
constexpr std::uint32_t kMaxDim = 1U << 24;
constexpr std::uint32_t kMaxLayers = 1024;

void put_u32(std::ostream& out, std::uint32_t v) {
  const std::array<char, 4> b{static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF),
                              static_cast<char>((v >> 16) & 0xFF),
                              static_cast<char>((v >> 24) & 0xFF)};
  out.write(b.data(), b.size());
}

void put_f32(std::ostream& out, float f) { put_u32(out, std::bit_cast<std::uint32_t>(f)); }

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::uint64_t offset() const { return offset_; }

  void read(char* dst, std::size_t n, const char* what) {
    in_.read(dst, static_cast<std::streamsize>(n));
    const auto got = static_cast<std::size_t>(in_.gcount());
    if (got != n) {
      throw FormatError(std::string("model file truncated while reading ") + what,
                        offset_ + got);
    }
    offset_ += n;
  }

  std::uint32_t u32(const char* what) {
    std::array<unsigned char, 4> b{};
    read(reinterpret_cast<char*>(b.data()), 4, what);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
  }

  float f32(const char* what) { return std::bit_cast<float>(u32(what)); }

  bool at_end() { return in_.peek() == std::char_traits<char>::eof(); }

 private:
  std::istream& in_;
  std::uint64_t offset_ = 0;
};

}  // namespace

void save_model(const FcModel& model, std::ostream& out) {
  model.validate();
  out.write(kModelMagic, 4);
  put_u32(out, kModelFormatVersion);
  put_u32(out, static_cast<std::uint32_t>(model.layers.size()));
  for (auto d : model.dims()) {
    put_u32(out, static_cast<std::uint32_t>(d));
  }
  for (const auto& l : model.layers) {
    out.put(static_cast<char>(l.activation));
  }
  for (const auto& l : model.layers) {
    for (float w : l.weights) {
      put_f32(out, w);
    }
    for (float b : l.bias) {
      put_f32(out, b);
    }
  }
  if (!out) {
    throw Error("failed to write model");
  }
}

void save_model(const FcModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot open " + path.string() + " for writing");
  }
  save_model(model, out);
}

FcModel load_model(std::istream& in) {
  Reader r(in);
  std::array<char, 4> magic{};
  r.read(magic.data(), 4, "magic");
  for (std::size_t i = 0; i < 4; ++i) {
    if (magic[i] != kModelMagic[i]) {
      throw FormatError("not a PHFC model file", i);
    }
  }
  const auto version = r.u32("version");
  if (version != kModelFormatVersion) {
    throw FormatError("unsupported model format version " + std::to_string(version), 4);
  }
  const auto layer_count = r.u32("layer count");
  if (layer_count == 0 || layer_count > kMaxLayers) {
    throw FormatError("implausible layer count " + std::to_string(layer_count), 8);
  }
  std::vector<std::size_t> dims;
  for (std::uint32_t i = 0; i <= layer_count; ++i) {
    const auto at = r.offset();
    const auto d = r.u32("dims");
    if (d == 0 || d > kMaxDim) {
      throw FormatError("implausible layer width " + std::to_string(d), at);
    }
    dims.push_back(d);
  }
  FcModel m;
  m.layers.resize(layer_count);
  for (std::uint32_t k = 0; k < layer_count; ++k) {
    const auto at = r.offset();
    char act = 0;
    r.read(&act, 1, "activation");
    if (act != 0 && act != 1) {
      throw FormatError("unknown activation code " + std::to_string(int(act)), at);
    }
    auto& l = m.layers[k];
    l.in = dims[k];
    l.out = dims[k + 1];
    l.activation = static_cast<Activation>(act);
  }
  for (auto& l : m.layers) {
    l.weights.resize(l.in * l.out);
    for (auto& w : l.weights) {
      w = r.f32("weights");
    }
    l.bias.resize(l.out);
    for (auto& b : l.bias) {
      b = r.f32("bias");
    }
  }
  if (!r.at_end()) {
    throw FormatError("trailing bytes after model", r.offset());
  }
  m.validate();
  return m;
}

FcModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open model file " + path.string());
  }
  return load_model(in);
}

}  // namespace phasemac::nn
