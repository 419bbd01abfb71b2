#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "phasemac/energy_model.hpp"

namespace phasemac::experiments {

enum class Task { kOracle, kEnergy, kAnomaly, kMnist, kReport };

std::string_view to_string(Task t);
Task parse_task(std::string_view name);

struct OracleSettings {
  std::uint64_t trials = 1'000'000;
  std::size_t max_length = 64;
  std::size_t boundary_trials = 8;  // full-scale dot products at the capacity edge
  int counter_bits = 20;
};

struct AnomalySettings {
  std::size_t horizon = 400;
  std::vector<std::size_t> hidden{256, 64, 256};
  std::size_t train_samples = 12'000;
  std::size_t train_stride = 10;
  std::size_t validation_samples = 6'000;
  std::size_t eval_samples = 24'000;
  std::size_t eval_stride = 50;
  std::size_t anomaly_spans = 4;
  std::size_t span_length = 2'400;
  int epochs = 30;
  double learning_rate = 0.01;
  std::size_t batch_size = 16;
  double noise_sigma = 0.05;
  std::vector<double> base_freqs{1.0 / 50.0, 1.0 / 18.5};
  std::vector<double> amplitudes{1.0, 0.5};
  double freq_shift = 0.25;
  double amp_shift = 0.5;
  double threshold_percentile = 99.0;
  int counter_bits = 20;
  std::filesystem::path model_in;
  std::filesystem::path model_out;
  std::filesystem::path windows_in;
  std::filesystem::path windows_out;
};

struct MnistSettings {
  std::size_t train_samples = 8'000;
  std::size_t test_samples = 1'000;
  std::vector<std::size_t> hidden{128};
  std::vector<std::size_t> full_hidden{512, 256, 128, 64};
  int epochs = 12;
  int full_epochs = 20;
  double learning_rate = 0.02;
  std::size_t batch_size = 32;
};

struct ExperimentConfig {
  Task task = Task::kReport;
  std::uint64_t seed = 1;
  std::vector<int> bits{8, 6, 4, 2};
  std::vector<std::uint64_t> batches{1, 2, 4, 8, 16, 32, 64, 128};
  std::vector<double> activities{0.03, 0.10, 1.0};
  std::filesystem::path out_dir = "out";
  std::filesystem::path data_root;
  bool full = false;
  OracleSettings oracle;
  AnomalySettings anomaly;
  MnistSettings mnist;
  energy::EnergyParams energy = energy::calibrate_defaults();

  std::filesystem::path mnist_dir() const { return data_root / "mnist"; }
};

/// $PHASEMAC_DATA if set, else ./data.
std::filesystem::path default_data_root();

ExperimentConfig default_config();

/// Applies one `key = value` setting. Throws Error on unknown keys.
void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value);
void apply_config_file(ExperimentConfig& cfg, const std::filesystem::path& path);

/// "8,6,4,2"; the token "float" is accepted and ignored (float is always the
/// reference). Each width must be in [2, 8].
std::vector<int> parse_bits(std::string_view text);

/// Comma list ("1,4,64") or a power-of-two range ("1..128").
std::vector<std::uint64_t> parse_batches(std::string_view text);

}  // namespace phasemac::experiments
