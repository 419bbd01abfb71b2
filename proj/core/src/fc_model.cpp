#include "phasemac/fc_model.hpp"

#include <cmath>
#include <random>
#include <string>

#include "phasemac/errors.hpp"

namespace phasemac::nn {

std::vector<std::size_t> FcModel::dims() const {
  std::vector<std::size_t> d;
  if (layers.empty()) {
    return d;
  }
  d.push_back(layers.front().in);
  for (const auto& l : layers) {
    d.push_back(l.out);
  }
  return d;
}

std::size_t FcModel::input_dim() const { return layers.empty() ? 0 : layers.front().in; }
std::size_t FcModel::output_dim() const { return layers.empty() ? 0 : layers.back().out; }

std::size_t FcModel::parameter_count() const {
  std::size_t n = 0;
  for (const auto& l : layers) {
    n += l.weights.size() + l.bias.size();
  }
  return n;
}

std::size_t FcModel::macs_per_inference() const {
  std::size_t n = 0;
  for (const auto& l : layers) {
    n += l.in * l.out;
  }
  return n;
}

void FcModel::validate() const {
  if (layers.empty()) {
    throw DimensionMismatch("model has no layers");
  }
  for (std::size_t k = 0; k < layers.size(); ++k) {
    const auto& l = layers[k];
    if (l.in == 0 || l.out == 0 || l.weights.size() != l.in * l.out || l.bias.size() != l.out) {
      throw DimensionMismatch("layer " + std::to_string(k) + " has inconsistent buffers");
    }
    if (k > 0 && layers[k - 1].out != l.in) {
      throw DimensionMismatch("layer " + std::to_string(k) + " expects " + std::to_string(l.in) +
                              " inputs but previous layer emits " +
                              std::to_string(layers[k - 1].out));
    }
  }
}

FcModel FcModel::random(std::span<const std::size_t> dims, std::uint64_t seed, Activation hidden,
                        Activation output) {
  if (dims.size() < 2) {
    throw DimensionMismatch("a model needs at least an input and an output width");
  }
  std::mt19937_64 rng(seed);
  FcModel m;
  for (std::size_t k = 0; k + 1 < dims.size(); ++k) {
    DenseLayer l;
    l.in = dims[k];
    l.out = dims[k + 1];
    l.activation = (k + 2 == dims.size()) ? output : hidden;
    const float limit = std::sqrt(6.0f / static_cast<float>(l.in));
    std::uniform_real_distribution<float> dist(-limit, limit);
    l.weights.resize(l.in * l.out);
    for (auto& w : l.weights) {
      w = dist(rng);
    }
    l.bias.assign(l.out, 0.0f);
    m.layers.push_back(std::move(l));
  }
  m.validate();
  return m;
}

void apply_activation(Activation act, std::span<float> v) {
  if (act == Activation::kRelu) {
    for (auto& x : v) {
      x = x > 0.0f ? x : 0.0f;
    }
  }
}

void dense_forward(const DenseLayer& layer, std::span<const float> in, std::span<float> out) {
  for (std::size_t o = 0; o < layer.out; ++o) {
    const float* w = layer.weights.data() + o * layer.in;
    float acc = 0.0f;
    for (std::size_t i = 0; i < layer.in; ++i) {
      acc += w[i] * in[i];
    }
    out[o] = acc + layer.bias[o];
  }
  apply_activation(layer.activation, out.first(layer.out));
}

}  // namespace phasemac::nn
