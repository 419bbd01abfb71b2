#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace phasemac::nn {

inline constexpr int kMinBits = 2;
inline constexpr int kMaxBits = 8;

/// Symmetric fixed-point tensor: real value ~= values[i] * scale, with
/// |values[i]| <= 2^(bits-1) - 1 (the most negative code is never used).
struct QuantizedTensor {
  std::vector<std::int8_t> values;
  double scale = 1.0;
  int bits = 8;
};

/// Largest code magnitude for a bit width: 2^(bits-1) - 1.
int max_code(int bits);

/// Per-tensor symmetric quantization with round-half-away-from-zero.
/// scale = max|x| / max_code(bits), or 1 for an all-zero tensor. Throws
/// std::invalid_argument for empty or non-finite input or bits outside [2, 8].
QuantizedTensor quantize(std::span<const float> x, int bits);

std::vector<float> dequantize(const QuantizedTensor& q);

}  // namespace phasemac::nn
