#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "phasemac/fc_model.hpp"
#include "phasemac/pmac_array.hpp"
#include "phasemac/quantize.hpp"

namespace phasemac::nn {

/// Where the integer matrix products run. kPmacSim and kIntegerReference
/// must agree bit for bit; kFloat skips quantization entirely.
enum class Backend { kPmacSim, kIntegerReference, kFloat };

std::string_view to_string(Backend b);
/// Accepts "pmac", "pmac-sim", "reference", "integer-reference", "float".
Backend parse_backend(std::string_view name);

struct QuantizedLayer {
  Int8Matrix weights;
  double weight_scale = 1.0;
  std::vector<float> bias;
  Activation activation = Activation::kIdentity;
};

/// Per-layer integer accumulators and quantized inputs from one forward pass.
struct ForwardTrace {
  std::vector<QuantizedTensor> inputs;
  std::vector<std::vector<std::int64_t>> accumulators;
};

/// A model prepared for repeated inference on one backend and bit width.
///
/// Quantized path, per layer: quantize the incoming activations to `bits`,
/// run the integer product, rescale by weight_scale * activation_scale, add
/// the float bias, apply the activation.
class Inference {
 public:
  Inference(FcModel model, Backend backend, int bits = 8, ArrayConfig array = {});

  /// Throws DimensionMismatch on a wrong input width, SaturationError or
  /// CapacityError tagged with the failing layer index.
  std::vector<float> forward(std::span<const float> input, ForwardTrace* trace = nullptr);

  Backend backend() const noexcept { return backend_; }
  int bits() const noexcept { return bits_; }
  const FcModel& model() const noexcept { return model_; }
  const std::vector<QuantizedLayer>& quantized_layers() const noexcept { return qlayers_; }

  /// Events recorded by the PMAC array. Empty for the other backends.
  EnergyLedger ledger() const;

 private:
  FcModel model_;
  Backend backend_;
  int bits_;
  std::vector<QuantizedLayer> qlayers_;
  std::optional<PmacArray> array_;
};

QuantizedLayer quantize_layer(const DenseLayer& layer, int bits);

/// One-shot convenience wrapper around Inference.
std::vector<float> fc_forward(const FcModel& model, std::span<const float> input, Backend backend,
                              int bits);

}  // namespace phasemac::nn
