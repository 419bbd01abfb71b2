#include "phasemac/experiments/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace phasemac::experiments {

SyntheticSeries gen_synthetic(const SyntheticConfig& cfg) {
  if (cfg.n < kMinSyntheticLength) {
    throw std::invalid_argument("synthetic series needs at least " +
                                std::to_string(kMinSyntheticLength) + " samples");
  }
  if (cfg.base_freqs.empty() || cfg.base_freqs.size() != cfg.amplitudes.size()) {
    throw std::invalid_argument("base_freqs and amplitudes must be non-empty and equal length");
  }
  std::size_t prev_end = 0;
  for (const auto& s : cfg.spans) {
    if (s.start >= s.end || s.end > cfg.n || s.start < prev_end) {
      throw std::invalid_argument("invalid anomaly span [" + std::to_string(s.start) + ", " +
                                  std::to_string(s.end) + ")");
    }
    prev_end = s.end;
  }

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> phase_dist(0.0, 2 * std::numbers::pi);
  std::vector<double> phase(cfg.base_freqs.size());
  for (auto& p : phase) {
    p = phase_dist(rng);
  }
  std::normal_distribution<double> noise(0.0, 1.0);

  SyntheticSeries out;
  out.samples.resize(cfg.n);
  out.anomaly_spans = cfg.spans;
  std::size_t span_idx = 0;
  // Elapsed time in base-frequency samples: a frequency-shifted sample
  // advances every tone by (1 + freq_shift) samples' worth of phase.
  double elapsed = 0.0;
  for (std::size_t t = 0; t < cfg.n; ++t) {
    while (span_idx < cfg.spans.size() && cfg.spans[span_idx].end <= t) {
      ++span_idx;
    }
    double freq_scale = 1.0;
    double amp_scale = 1.0;
    if (span_idx < cfg.spans.size() && cfg.spans[span_idx].start <= t) {
      if (cfg.spans[span_idx].kind == AnomalyKind::kFrequencyShift) {
        freq_scale += cfg.freq_shift;
      } else {
        amp_scale += cfg.amp_shift;
      }
    }
    double v = 0.0;
    for (std::size_t k = 0; k < phase.size(); ++k) {
      const double cycles = std::fmod(cfg.base_freqs[k] * elapsed, 1.0);
      v += amp_scale * cfg.amplitudes[k] * std::sin(phase[k] + 2 * std::numbers::pi * cycles);
    }
    elapsed += freq_scale;
    // Always draw, so the noise sequence does not depend on sigma being zero.
    const double eps = noise(rng);
    out.samples[t] = static_cast<float>(v + cfg.noise_sigma * eps);
  }
  return out;
}

std::vector<AnomalySpan> place_spans(std::size_t n, std::size_t count, std::size_t length) {
  std::vector<AnomalySpan> spans;
  if (count == 0) {
    return spans;
  }
  const std::size_t slot = n / count;
  if (length == 0 || length > slot) {
    throw std::invalid_argument("anomaly spans do not fit in the series");
  }
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t start = i * slot + (slot - length) / 2;
    spans.push_back({start, start + length,
                     i % 2 == 0 ? AnomalyKind::kFrequencyShift : AnomalyKind::kAmplitudeShift});
  }
  return spans;
}

std::vector<std::size_t> window_starts(std::size_t n, std::size_t length, std::size_t stride) {
  if (stride == 0) {
    throw std::invalid_argument("window stride must be positive");
  }
  std::vector<std::size_t> starts;
  for (std::size_t s = 0; s + length <= n; s += stride) {
    starts.push_back(s);
  }
  return starts;
}

bool overlaps_anomaly(std::span<const AnomalySpan> spans, std::size_t start, std::size_t length) {
  for (const auto& s : spans) {
    if (start < s.end && s.start < start + length) {
      return true;
    }
  }
  return false;
}

}  // namespace phasemac::experiments
