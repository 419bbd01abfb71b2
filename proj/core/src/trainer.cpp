#include "phasemac/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "phasemac/errors.hpp"

namespace phasemac::nn {

void Dataset::add(std::span<const float> input, std::span<const float> target) {
  if (input.size() != input_dim || target.size() != target_dim) {
    throw DimensionMismatch("dataset sample has wrong width");
  }
  inputs.insert(inputs.end(), input.begin(), input.end());
  targets.insert(targets.end(), target.begin(), target.end());
}

namespace {

void softmax(std::span<const float> logits, std::span<float> probs) {
  const float peak = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    probs[i] = std::exp(logits[i] - peak);
    sum += probs[i];
  }
  for (auto& p : probs) {
    p = static_cast<float>(p / sum);
  }
}

// Scratch buffers for one forward/backward pass.
struct Workspace {
  std::vector<std::vector<float>> acts;  // acts[0] = input, acts[k+1] = layer k output
  std::vector<std::vector<float>> deltas;
  std::vector<std::vector<float>> grad_w;
  std::vector<std::vector<float>> grad_b;

  explicit Workspace(const FcModel& m) {
    const auto dims = m.dims();
    for (auto d : dims) {
      acts.emplace_back(d);
      deltas.emplace_back(d);
    }
    for (const auto& l : m.layers) {
      grad_w.emplace_back(l.weights.size());
      grad_b.emplace_back(l.bias.size());
    }
  }

  void clear_grads() {
    for (auto& g : grad_w) {
      std::fill(g.begin(), g.end(), 0.0f);
    }
    for (auto& g : grad_b) {
      std::fill(g.begin(), g.end(), 0.0f);
    }
  }
};

void forward(const FcModel& m, std::span<const float> input, Workspace& ws) {
  std::copy(input.begin(), input.end(), ws.acts[0].begin());
  for (std::size_t k = 0; k < m.layers.size(); ++k) {
    dense_forward(m.layers[k], ws.acts[k], ws.acts[k + 1]);
  }
}

// Accumulates gradients of one sample into ws.grad_*; returns its loss.
double backward(const FcModel& m, std::span<const float> target, Loss loss, Workspace& ws) {
  const std::size_t depth = m.layers.size();
  auto& out = ws.acts[depth];
  auto& delta = ws.deltas[depth];
  const double value = sample_loss(out, target, loss);

  if (loss == Loss::kMse) {
    const float k = 2.0f / static_cast<float>(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      delta[i] = k * (out[i] - target[i]);
    }
  } else {
    softmax(out, delta);
    for (std::size_t i = 0; i < out.size(); ++i) {
      delta[i] -= target[i];
    }
  }

  for (std::size_t k = depth; k-- > 0;) {
    const auto& layer = m.layers[k];
    auto& d = ws.deltas[k + 1];
    if (layer.activation == Activation::kRelu) {
      const auto& a = ws.acts[k + 1];
      for (std::size_t o = 0; o < layer.out; ++o) {
        if (a[o] <= 0.0f) {
          d[o] = 0.0f;
        }
      }
    }
    const auto& a_in = ws.acts[k];
    auto& gw = ws.grad_w[k];
    auto& gb = ws.grad_b[k];
    for (std::size_t o = 0; o < layer.out; ++o) {
      const float g = d[o];
      gb[o] += g;
      if (g == 0.0f) {
        continue;
      }
      float* row = gw.data() + o * layer.in;
      for (std::size_t i = 0; i < layer.in; ++i) {
        row[i] += g * a_in[i];
      }
    }
    if (k > 0) {
      auto& d_in = ws.deltas[k];
      std::fill(d_in.begin(), d_in.end(), 0.0f);
      for (std::size_t o = 0; o < layer.out; ++o) {
        const float g = d[o];
        if (g == 0.0f) {
          continue;
        }
        const float* w = layer.weights.data() + o * layer.in;
        for (std::size_t i = 0; i < layer.in; ++i) {
          d_in[i] += w[i] * g;
        }
      }
    }
  }
  return value;
}

}  // namespace

double sample_loss(std::span<const float> output, std::span<const float> target, Loss loss) {
  if (output.size() != target.size()) {
    throw DimensionMismatch("loss: output and target widths differ");
  }
  if (loss == Loss::kMse) {
    double acc = 0.0;
    for (std::size_t i = 0; i < output.size(); ++i) {
      const double e = static_cast<double>(output[i]) - target[i];
      acc += e * e;
    }
    return acc / static_cast<double>(output.size());
  }
  const float peak = *std::max_element(output.begin(), output.end());
  double sum = 0.0;
  for (float v : output) {
    sum += std::exp(static_cast<double>(v) - peak);
  }
  const double log_z = peak + std::log(sum);
  double acc = 0.0;
  for (std::size_t i = 0; i < output.size(); ++i) {
    acc -= target[i] * (static_cast<double>(output[i]) - log_z);
  }
  return acc;
}

FcModel train_sgd(FcModel model, const Dataset& data, const SgdParams& params,
                  std::vector<double>* epoch_losses) {
  model.validate();
  if (data.size() == 0) {
    throw TrainingError("training set is empty");
  }
  if (data.input_dim != model.input_dim() || data.target_dim != model.output_dim()) {
    throw DimensionMismatch("dataset widths do not match the model");
  }
  if (params.batch_size == 0) {
    throw std::invalid_argument("batch size must be positive");
  }

  std::mt19937_64 rng(params.seed);
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  Workspace ws(model);
  std::vector<std::vector<float>> vel_w, vel_b;
  for (const auto& l : model.layers) {
    vel_w.emplace_back(l.weights.size(), 0.0f);
    vel_b.emplace_back(l.bias.size(), 0.0f);
  }
  const auto momentum = static_cast<float>(params.momentum);

  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < order.size(); start += params.batch_size) {
      const std::size_t end = std::min(order.size(), start + params.batch_size);
      ws.clear_grads();
      double batch_loss = 0.0;
      for (std::size_t s = start; s < end; ++s) {
        forward(model, data.input(order[s]), ws);
        batch_loss += backward(model, data.target(order[s]), params.loss, ws);
      }
      if (!std::isfinite(batch_loss)) {
        throw TrainingError("non-finite loss at epoch " + std::to_string(epoch) +
                            ", samples " + std::to_string(start) + ".." +
                            std::to_string(end - 1) + "; lower the learning rate (now " +
                            std::to_string(params.learning_rate) + ")");
      }
      epoch_loss += batch_loss;

      const auto step = static_cast<float>(params.learning_rate / static_cast<double>(end - start));
      for (std::size_t k = 0; k < model.layers.size(); ++k) {
        auto& layer = model.layers[k];
        for (std::size_t i = 0; i < layer.weights.size(); ++i) {
          vel_w[k][i] = momentum * vel_w[k][i] - step * ws.grad_w[k][i];
          layer.weights[i] += vel_w[k][i];
        }
        for (std::size_t i = 0; i < layer.bias.size(); ++i) {
          vel_b[k][i] = momentum * vel_b[k][i] - step * ws.grad_b[k][i];
          layer.bias[i] += vel_b[k][i];
        }
      }
    }
    if (epoch_losses != nullptr) {
      epoch_losses->push_back(epoch_loss / static_cast<double>(order.size()));
    }
  }
  return model;
}

double evaluate_loss(const FcModel& model, const Dataset& data, Loss loss) {
  if (data.size() == 0) {
    return 0.0;
  }
  Workspace ws(model);
  double acc = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    forward(model, data.input(i), ws);
    acc += sample_loss(ws.acts.back(), data.target(i), loss);
  }
  return acc / static_cast<double>(data.size());
}

}  // namespace phasemac::nn
