#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace phasemac::experiments {

enum class AnomalyKind { kFrequencyShift, kAmplitudeShift };

/// Half-open sample range [start, end) carrying one anomaly.
struct AnomalySpan {
  std::size_t start = 0;
  std::size_t end = 0;
  AnomalyKind kind = AnomalyKind::kAmplitudeShift;

  friend bool operator==(const AnomalySpan&, const AnomalySpan&) = default;
};

/// Stand-in for machine vibration data: a sum of sinusoids with Gaussian
/// noise. Inside an anomaly span every tone's frequency is scaled by
/// (1 + freq_shift) or its amplitude by (1 + amp_shift). Phase is integrated
/// sample by sample, so frequency changes are continuous.
struct SyntheticConfig {
  std::size_t n = 4000;
  std::vector<double> base_freqs{1.0 / 50.0};  // cycles per sample
  std::vector<double> amplitudes{1.0};
  double noise_sigma = 0.0;
  std::vector<AnomalySpan> spans;
  double freq_shift = 0.25;
  double amp_shift = 0.5;
  std::uint64_t seed = 1;
};

struct SyntheticSeries {
  std::vector<float> samples;
  std::vector<AnomalySpan> anomaly_spans;
};

inline constexpr std::size_t kMinSyntheticLength = 2 * 800;

/// Deterministic per seed. Throws std::invalid_argument when n is below
/// kMinSyntheticLength, the tone lists disagree, or spans are empty, out of
/// bounds, unsorted or overlapping.
SyntheticSeries gen_synthetic(const SyntheticConfig& cfg);

/// `count` spans of `length` samples spread evenly over [0, n), alternating
/// frequency and amplitude shifts.
std::vector<AnomalySpan> place_spans(std::size_t n, std::size_t count, std::size_t length);

/// Start offsets of all windows of `length` samples taken every `stride`.
std::vector<std::size_t> window_starts(std::size_t n, std::size_t length, std::size_t stride);

/// True if [start, start+length) intersects any span.
bool overlaps_anomaly(std::span<const AnomalySpan> spans, std::size_t start, std::size_t length);

}  // namespace phasemac::experiments
