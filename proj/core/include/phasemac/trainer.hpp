#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "phasemac/fc_model.hpp"

namespace phasemac::nn {

enum class Loss {
  kMse,                  // mean over outputs of (y - t)^2
  kSoftmaxCrossEntropy,  // targets are one-hot class vectors
};

/// Flat storage of (input, target) pairs.
struct Dataset {
  std::size_t input_dim = 0;
  std::size_t target_dim = 0;
  std::vector<float> inputs;
  std::vector<float> targets;

  Dataset() = default;
  Dataset(std::size_t in_dim, std::size_t out_dim) : input_dim(in_dim), target_dim(out_dim) {}

  std::size_t size() const noexcept { return input_dim == 0 ? 0 : inputs.size() / input_dim; }
  void add(std::span<const float> input, std::span<const float> target);
  std::span<const float> input(std::size_t i) const {
    return {inputs.data() + i * input_dim, input_dim};
  }
  std::span<const float> target(std::size_t i) const {
    return {targets.data() + i * target_dim, target_dim};
  }
};

struct SgdParams {
  double learning_rate = 0.01;
  int epochs = 10;
  std::size_t batch_size = 32;
  double momentum = 0.9;
  std::uint64_t seed = 1;
  Loss loss = Loss::kMse;
};

/// Mini-batch SGD with momentum, in float. Deterministic for a given seed.
/// Appends the mean training loss of every epoch to `epoch_losses` when
/// given. Throws TrainingError when the loss becomes non-finite.
FcModel train_sgd(FcModel model, const Dataset& data, const SgdParams& params,
                  std::vector<double>* epoch_losses = nullptr);

double sample_loss(std::span<const float> output, std::span<const float> target, Loss loss);

/// Mean loss of the float model over the dataset.
double evaluate_loss(const FcModel& model, const Dataset& data, Loss loss);

}  // namespace phasemac::nn
