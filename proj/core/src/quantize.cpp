#include "phasemac/quantize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace phasemac::nn {

int max_code(int bits) {
  if (bits < kMinBits || bits > kMaxBits) {
    throw std::invalid_argument("bit width " + std::to_string(bits) + " outside [2, 8]");
  }
  return (1 << (bits - 1)) - 1;
}

QuantizedTensor quantize(std::span<const float> x, int bits) {
  const int qmax = max_code(bits);
  if (x.empty()) {
    throw std::invalid_argument("cannot quantize an empty tensor");
  }
  double max_abs = 0.0;
  for (float v : x) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("cannot quantize a non-finite value");
    }
    max_abs = std::max(max_abs, std::fabs(static_cast<double>(v)));
  }

  QuantizedTensor q;
  q.bits = bits;
  q.values.resize(x.size());
  if (max_abs == 0.0) {
    q.scale = 1.0;
    return q;
  }
  q.scale = max_abs / qmax;
  // x * qmax / max_abs rather than x / scale: exact at the extremes, so
  // max|x| always maps to qmax.
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double code = std::round(static_cast<double>(x[i]) * qmax / max_abs);
    q.values[i] = static_cast<std::int8_t>(std::clamp(code, -double(qmax), double(qmax)));
  }
  return q;
}

std::vector<float> dequantize(const QuantizedTensor& q) {
  std::vector<float> out(q.values.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<float>(q.values[i] * q.scale);
  }
  return out;
}

}  // namespace phasemac::nn
