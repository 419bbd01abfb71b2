#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "phasemac/energy_model.hpp"
#include "phasemac/experiments/config.hpp"
#include "phasemac/fc_model.hpp"
#include "phasemac/pmac_unit.hpp"

namespace phasemac::experiments {

// ---------------------------------------------------------------- oracle

struct OracleCounterexample {
  std::vector<std::int8_t> d;
  std::vector<std::int8_t> w;
  std::int64_t expected = 0;
  std::int64_t actual = 0;
  std::string note;
};

struct OracleResult {
  std::uint64_t trials = 0;
  std::uint64_t macs = 0;
  std::uint64_t mismatches = 0;
  std::uint64_t boundary_cases = 0;   // full-scale products at max_safe_dot_length
  std::uint64_t saturation_checks = 0;  // products one past the edge that must throw
  std::uint64_t max_safe_length = 0;
  std::optional<OracleCounterexample> first_failure;

  bool passed() const noexcept { return mismatches == 0; }
};

/// Randomized equivalence of the PMAC datapath against ref_dot. `split` lets
/// a test inject a faulty weight splitter.
OracleResult run_oracle(const OracleSettings& settings, std::uint64_t seed,
                        WeightSplitFn split = &split_weight);

// ---------------------------------------------------------------- anomaly

struct ResolutionScores {
  std::string label;  // "float" or "<b>b"
  int bits = 0;       // 0 for float
  std::vector<double> scores;
  double auc = 0;
  double correlation_with_float = 0;
  double threshold = 0;
  double detection_rate = 0;
  double false_positive_rate = 0;
};

struct AnomalyResult {
  std::vector<std::size_t> window_starts;
  std::vector<std::uint8_t> labels;
  std::vector<ResolutionScores> resolutions;  // float first, then requested bits
  std::vector<double> epoch_losses;
  EnergyLedger pmac_ledger;  // events of the highest-resolution PMAC pass
  std::uint64_t pmac_macs = 0;
  nn::FcModel model;
};

AnomalyResult run_anomaly(const AnomalySettings& settings, std::span<const int> bits,
                          std::uint64_t seed);

// ---------------------------------------------------------------- mnist

struct MnistResult {
  std::size_t train_samples = 0;
  std::size_t test_samples = 0;
  std::vector<std::size_t> dims;
  double float_accuracy = 0;
  double pmac_accuracy = 0;  // 8-bit PMAC backend
  std::vector<double> epoch_losses;
  EnergyLedger pmac_ledger;

  double gap_points() const noexcept { return 100.0 * (float_accuracy - pmac_accuracy); }
};

MnistResult run_mnist(const MnistSettings& settings, const std::filesystem::path& mnist_dir,
                      std::uint64_t seed, bool full);

// ---------------------------------------------------------------- commands
//
// Each command writes its CSV/gnuplot/text outputs under cfg.out_dir, logs a
// summary to `log`, and returns the process exit code.

int cmd_oracle(const ExperimentConfig& cfg, std::ostream& log);
int cmd_energy(const ExperimentConfig& cfg, std::ostream& log);
int cmd_anomaly(const ExperimentConfig& cfg, std::ostream& log);
int cmd_mnist(const ExperimentConfig& cfg, std::ostream& log);
int cmd_report(const ExperimentConfig& cfg, std::ostream& log);

int run_command(const ExperimentConfig& cfg, std::ostream& log);

/// Plain-text comparison table: live model metrics next to the reported
/// chip and competitor figures.
std::string render_report(const energy::EnergyParams& params);

}  // namespace phasemac::experiments
