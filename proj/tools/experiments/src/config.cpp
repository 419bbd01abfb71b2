#include "phasemac/experiments/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "phasemac/errors.hpp"
#include "phasemac/key_value.hpp"

namespace phasemac::experiments {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find(sep, start), text.size());
    auto part = text.substr(start, end - start);
    while (!part.empty() && part.front() == ' ') {
      part.remove_prefix(1);
    }
    while (!part.empty() && part.back() == ' ') {
      part.remove_suffix(1);
    }
    if (!part.empty()) {
      parts.push_back(part);
    }
    start = end + 1;
  }
  return parts;
}

std::size_t parse_size(std::string_view v, std::string_view key) {
  const auto n = parse_int(v, key);
  if (n < 0) {
    throw Error(std::string(key) + " must be non-negative");
  }
  return static_cast<std::size_t>(n);
}

std::vector<std::size_t> parse_sizes(std::string_view v, std::string_view key) {
  std::vector<std::size_t> out;
  for (auto p : split(v, ',')) {
    out.push_back(parse_size(p, key));
  }
  return out;
}

std::vector<double> parse_doubles(std::string_view v, std::string_view key) {
  std::vector<double> out;
  for (auto p : split(v, ',')) {
    out.push_back(parse_double(p, key));
  }
  return out;
}

bool parse_bool(std::string_view v, std::string_view key) {
  if (v == "1" || v == "true" || v == "yes") {
    return true;
  }
  if (v == "0" || v == "false" || v == "no") {
    return false;
  }
  throw Error("invalid boolean for " + std::string(key) + ": '" + std::string(v) + "'");
}

}  // namespace

std::string_view to_string(Task t) {
  switch (t) {
    case Task::kOracle:
      return "oracle";
    case Task::kEnergy:
      return "energy";
    case Task::kAnomaly:
      return "anomaly";
    case Task::kMnist:
      return "mnist";
    case Task::kReport:
      return "report";
  }
  return "unknown";
}

Task parse_task(std::string_view name) {
  for (auto t : {Task::kOracle, Task::kEnergy, Task::kAnomaly, Task::kMnist, Task::kReport}) {
    if (name == to_string(t)) {
      return t;
    }
  }
  throw Error("unknown command '" + std::string(name) +
              "' (expected oracle, energy, anomaly, mnist or report)");
}

std::filesystem::path default_data_root() {
  if (const char* env = std::getenv("PHASEMAC_DATA"); env != nullptr && *env != '\0') {
    return env;
  }
  return "data";
}

ExperimentConfig default_config() {
  ExperimentConfig cfg;
  cfg.data_root = default_data_root();
  return cfg;
}

std::vector<int> parse_bits(std::string_view text) {
  std::vector<int> bits;
  for (auto p : split(text, ',')) {
    if (p == "float" || p == "fp32") {
      continue;
    }
    const auto b = parse_int(p, "bits");
    if (b < 2 || b > 8) {
      throw Error("bit width " + std::string(p) + " outside [2, 8]");
    }
    bits.push_back(static_cast<int>(b));
  }
  return bits;
}

std::vector<std::uint64_t> parse_batches(std::string_view text) {
  std::vector<std::uint64_t> out;
  if (const auto dots = text.find(".."); dots != std::string_view::npos) {
    const auto lo = parse_int(text.substr(0, dots), "batch");
    const auto hi = parse_int(text.substr(dots + 2), "batch");
    if (lo < 1 || hi < lo) {
      throw Error("invalid batch range '" + std::string(text) + "'");
    }
    for (auto b = static_cast<std::uint64_t>(lo); b <= static_cast<std::uint64_t>(hi); b *= 2) {
      out.push_back(b);
    }
    return out;
  }
  for (auto p : split(text, ',')) {
    const auto b = parse_int(p, "batch");
    if (b < 1) {
      throw Error("batch sizes must be >= 1");
    }
    out.push_back(static_cast<std::uint64_t>(b));
  }
  if (out.empty()) {
    throw Error("empty batch list");
  }
  return out;
}

void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view v) {
  auto& an = cfg.anomaly;
  auto& mn = cfg.mnist;
  if (key == "seed") {
    cfg.seed = static_cast<std::uint64_t>(parse_int(v, key));
  } else if (key == "bits") {
    cfg.bits = parse_bits(v);
  } else if (key == "batch") {
    cfg.batches = parse_batches(v);
  } else if (key == "activities") {
    cfg.activities = parse_doubles(v, key);
  } else if (key == "out") {
    cfg.out_dir = std::string(v);
  } else if (key == "data") {
    cfg.data_root = std::string(v);
  } else if (key == "full") {
    cfg.full = parse_bool(v, key);
  } else if (key == "oracle.trials") {
    cfg.oracle.trials = parse_size(v, key);
  } else if (key == "oracle.max_length") {
    cfg.oracle.max_length = parse_size(v, key);
  } else if (key == "oracle.boundary_trials") {
    cfg.oracle.boundary_trials = parse_size(v, key);
  } else if (key == "oracle.counter_bits") {
    cfg.oracle.counter_bits = static_cast<int>(parse_int(v, key));
  } else if (key == "anomaly.horizon") {
    an.horizon = parse_size(v, key);
  } else if (key == "anomaly.hidden") {
    an.hidden = parse_sizes(v, key);
  } else if (key == "anomaly.train_samples") {
    an.train_samples = parse_size(v, key);
  } else if (key == "anomaly.train_stride") {
    an.train_stride = parse_size(v, key);
  } else if (key == "anomaly.validation_samples") {
    an.validation_samples = parse_size(v, key);
  } else if (key == "anomaly.eval_samples") {
    an.eval_samples = parse_size(v, key);
  } else if (key == "anomaly.eval_stride") {
    an.eval_stride = parse_size(v, key);
  } else if (key == "anomaly.spans") {
    an.anomaly_spans = parse_size(v, key);
  } else if (key == "anomaly.span_length") {
    an.span_length = parse_size(v, key);
  } else if (key == "anomaly.epochs") {
    an.epochs = static_cast<int>(parse_int(v, key));
  } else if (key == "anomaly.learning_rate") {
    an.learning_rate = parse_double(v, key);
  } else if (key == "anomaly.batch_size") {
    an.batch_size = parse_size(v, key);
  } else if (key == "anomaly.noise_sigma") {
    an.noise_sigma = parse_double(v, key);
  } else if (key == "anomaly.base_freqs") {
    an.base_freqs = parse_doubles(v, key);
  } else if (key == "anomaly.amplitudes") {
    an.amplitudes = parse_doubles(v, key);
  } else if (key == "anomaly.freq_shift") {
    an.freq_shift = parse_double(v, key);
  } else if (key == "anomaly.amp_shift") {
    an.amp_shift = parse_double(v, key);
  } else if (key == "anomaly.threshold_percentile") {
    an.threshold_percentile = parse_double(v, key);
  } else if (key == "anomaly.counter_bits") {
    an.counter_bits = static_cast<int>(parse_int(v, key));
  } else if (key == "anomaly.model_in") {
    an.model_in = std::string(v);
  } else if (key == "anomaly.model_out") {
    an.model_out = std::string(v);
  } else if (key == "anomaly.windows_in") {
    an.windows_in = std::string(v);
  } else if (key == "anomaly.windows_out") {
    an.windows_out = std::string(v);
  } else if (key == "mnist.train_samples") {
    mn.train_samples = parse_size(v, key);
  } else if (key == "mnist.test_samples") {
    mn.test_samples = parse_size(v, key);
  } else if (key == "mnist.hidden") {
    mn.hidden = parse_sizes(v, key);
  } else if (key == "mnist.full_hidden") {
    mn.full_hidden = parse_sizes(v, key);
  } else if (key == "mnist.epochs") {
    mn.epochs = static_cast<int>(parse_int(v, key));
  } else if (key == "mnist.full_epochs") {
    mn.full_epochs = static_cast<int>(parse_int(v, key));
  } else if (key == "mnist.learning_rate") {
    mn.learning_rate = parse_double(v, key);
  } else if (key == "mnist.batch_size") {
    mn.batch_size = parse_size(v, key);
  } else if (key.starts_with("energy.")) {
    if (!energy::apply_param(cfg.energy, key.substr(7), v)) {
      throw Error("unknown energy parameter '" + std::string(key) + "'");
    }
    cfg.energy.validate();
  } else {
    throw Error("unknown config key '" + std::string(key) + "'");
  }
}

void apply_config_file(ExperimentConfig& cfg, const std::filesystem::path& path) {
  for (const auto& kv : parse_key_values_file(path)) {
    try {
      apply_setting(cfg, kv.key, kv.value);
    } catch (const Error& e) {
      throw Error(path.string() + ":" + std::to_string(kv.line) + ": " + e.what());
    }
  }
}

}  // namespace phasemac::experiments
