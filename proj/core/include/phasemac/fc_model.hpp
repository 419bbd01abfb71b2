#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace phasemac::nn {

enum class Activation : std::uint8_t { kIdentity = 0, kRelu = 1 };

/// Fully-connected layer. `weights` is row-major, out x in.
struct DenseLayer {
  std::size_t in = 0;
  std::size_t out = 0;
  std::vector<float> weights;
  std::vector<float> bias;
  Activation activation = Activation::kIdentity;

  std::span<const float> row(std::size_t o) const { return {weights.data() + o * in, in}; }

  friend bool operator==(const DenseLayer&, const DenseLayer&) = default;
};

struct FcModel {
  std::vector<DenseLayer> layers;

  /// dims[0] is the input width, dims[k] the output width of layer k-1.
  std::vector<std::size_t> dims() const;
  std::size_t input_dim() const;
  std::size_t output_dim() const;
  std::size_t parameter_count() const;
  std::size_t macs_per_inference() const;

  /// Throws DimensionMismatch if consecutive layers disagree or buffers have
  /// the wrong size.
  void validate() const;

  /// He-uniform weights, zero biases. Hidden layers use `hidden`, the last
  /// layer uses `output`.
  static FcModel random(std::span<const std::size_t> dims, std::uint64_t seed,
                        Activation hidden = Activation::kRelu,
                        Activation output = Activation::kIdentity);

  friend bool operator==(const FcModel&, const FcModel&) = default;
};

void apply_activation(Activation act, std::span<float> v);

/// Plain float forward pass of one layer: out = act(W in + b).
void dense_forward(const DenseLayer& layer, std::span<const float> in, std::span<float> out);

}  // namespace phasemac::nn
