#include "mnist_fixture.hpp"

#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "phasemac/experiments/idx.hpp"

namespace testing_support {

namespace {

void write_set(const std::filesystem::path& dir, const std::string& prefix, std::size_t n,
               std::mt19937& rng) {
  std::vector<std::uint8_t> images(n * 28 * 28);
  std::vector<std::uint8_t> labels(n);
  std::uniform_int_distribution<int> noise(0, 60);
  for (std::size_t i = 0; i < n; ++i) {
    const int label = static_cast<int>(i % 10);
    labels[i] = static_cast<std::uint8_t>(label);
    for (std::size_t p = 0; p < 28 * 28; ++p) {
      images[i * 784 + p] = static_cast<std::uint8_t>(noise(rng));
    }
    const std::size_t row = 3 + 2 * static_cast<std::size_t>(label);
    for (std::size_t c = 4; c < 24; ++c) images[i * 784 + row * 28 + c] = 255;
  }
  const std::uint32_t image_dims[] = {static_cast<std::uint32_t>(n), 28, 28};
  const std::uint32_t label_dims[] = {static_cast<std::uint32_t>(n)};
  std::ofstream img(dir / (prefix + "-images-idx3-ubyte"), std::ios::binary);
  phasemac::experiments::write_idx(img, phasemac::experiments::kIdxImagesMagic, image_dims, images);
  std::ofstream lab(dir / (prefix + "-labels-idx1-ubyte"), std::ios::binary);
  phasemac::experiments::write_idx(lab, phasemac::experiments::kIdxLabelsMagic, label_dims, labels);
}

}  // namespace

void write_mnist_fixture(const std::filesystem::path& dir, std::size_t train, std::size_t test,
                         unsigned seed) {
  std::filesystem::create_directories(dir);
  std::mt19937 rng(seed);
  write_set(dir, "train", train, rng);
  write_set(dir, "t10k", test, rng);
}

}  // namespace testing_support
