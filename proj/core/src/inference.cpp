#include "phasemac/inference.hpp"

#include <string>

#include "phasemac/errors.hpp"

namespace phasemac::nn {

std::string_view to_string(Backend b) {
  switch (b) {
    case Backend::kPmacSim:
      return "pmac-sim";
    case Backend::kIntegerReference:
      return "integer-reference";
    case Backend::kFloat:
      return "float";
  }
  return "unknown";
}

Backend parse_backend(std::string_view name) {
  if (name == "pmac" || name == "pmac-sim") {
    return Backend::kPmacSim;
  }
  if (name == "reference" || name == "integer-reference") {
    return Backend::kIntegerReference;
  }
  if (name == "float") {
    return Backend::kFloat;
  }
  throw std::invalid_argument("unknown backend '" + std::string(name) + "'");
}

QuantizedLayer quantize_layer(const DenseLayer& layer, int bits) {
  auto q = quantize(layer.weights, bits);
  QuantizedLayer ql;
  ql.weights = Int8Matrix(layer.out, layer.in, std::move(q.values));
  ql.weight_scale = q.scale;
  ql.bias = layer.bias;
  ql.activation = layer.activation;
  return ql;
}

Inference::Inference(FcModel model, Backend backend, int bits, ArrayConfig array)
    : model_(std::move(model)), backend_(backend), bits_(bits) {
  model_.validate();
  if (backend_ == Backend::kFloat) {
    return;
  }
  max_code(bits_);  // validates the width
  qlayers_.reserve(model_.layers.size());
  for (const auto& layer : model_.layers) {
    qlayers_.push_back(quantize_layer(layer, bits_));
  }
  if (backend_ == Backend::kPmacSim) {
    array_.emplace(array);
  }
}

EnergyLedger Inference::ledger() const { return array_ ? array_->ledger() : EnergyLedger{}; }

std::vector<float> Inference::forward(std::span<const float> input, ForwardTrace* trace) {
  if (input.size() != model_.input_dim()) {
    throw DimensionMismatch("model expects " + std::to_string(model_.input_dim()) +
                            " inputs, got " + std::to_string(input.size()));
  }
  std::vector<float> act(input.begin(), input.end());
  std::vector<float> next;

  if (backend_ == Backend::kFloat) {
    for (const auto& layer : model_.layers) {
      next.resize(layer.out);
      dense_forward(layer, act, next);
      act.swap(next);
    }
    return act;
  }

  for (std::size_t k = 0; k < qlayers_.size(); ++k) {
    const auto& layer = qlayers_[k];
    auto qx = quantize(act, bits_);
    std::vector<std::int64_t> acc;
    try {
      acc = backend_ == Backend::kPmacSim ? array_->matvec(layer.weights, qx.values)
                                          : ref_matvec(layer.weights, qx.values);
    } catch (const SaturationError& e) {
      throw e.at_layer(static_cast<int>(k));
    } catch (const CapacityError& e) {
      throw e.at_layer(static_cast<int>(k));
    }
    const double rescale = layer.weight_scale * qx.scale;
    next.resize(acc.size());
    for (std::size_t o = 0; o < acc.size(); ++o) {
      next[o] = static_cast<float>(static_cast<double>(acc[o]) * rescale) + layer.bias[o];
    }
    apply_activation(layer.activation, next);
    if (trace != nullptr) {
      trace->inputs.push_back(std::move(qx));
      trace->accumulators.push_back(std::move(acc));
    }
    act.swap(next);
  }
  return act;
}

std::vector<float> fc_forward(const FcModel& model, std::span<const float> input, Backend backend,
                              int bits) {
  Inference engine(model, backend, bits);
  return engine.forward(input);
}

}  // namespace phasemac::nn
