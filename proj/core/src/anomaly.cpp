#include "phasemac/anomaly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "phasemac/errors.hpp"

namespace phasemac::nn {

double mse(std::span<const float> prediction, std::span<const float> target) {
  if (prediction.size() != target.size() || prediction.empty()) {
    throw DimensionMismatch("mse: series lengths differ or are empty");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < prediction.size(); ++i) {
    const double e = static_cast<double>(prediction[i]) - target[i];
    acc += e * e;
  }
  return acc / static_cast<double>(prediction.size());
}

double anomaly_score(Inference& engine, std::span<const float> window) {
  const std::size_t h = engine.model().input_dim();
  if (window.size() != 2 * h || engine.model().output_dim() != h) {
    throw DimensionMismatch("anomaly window has " + std::to_string(window.size()) +
                            " samples; model needs 2 x " + std::to_string(h));
  }
  const auto prediction = engine.forward(window.first(h));
  return mse(prediction, window.subspan(h));
}

double anomaly_score(const FcModel& model, std::span<const float> window, int bits,
                     Backend backend) {
  Inference engine(model, backend, bits);
  return anomaly_score(engine, window);
}

std::vector<bool> detect(std::span<const double> scores, double threshold) {
  if (!(threshold > 0)) {
    throw std::invalid_argument("detection threshold must be positive");
  }
  std::vector<bool> alerts(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    alerts[i] = scores[i] > threshold;
  }
  return alerts;
}

double roc_auc(std::span<const double> scores, std::span<const std::uint8_t> labels) {
  if (scores.size() != labels.size()) {
    throw DimensionMismatch("roc_auc: scores and labels differ in length");
  }
  std::vector<std::size_t> idx(scores.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return scores[a] < scores[b]; });

  double rank_sum = 0.0;
  std::size_t positives = 0;
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j < idx.size() && scores[idx[j]] == scores[idx[i]]) {
      ++j;
    }
    const double avg_rank = 0.5 * static_cast<double>(i + j + 1);  // 1-based ranks i+1..j
    for (std::size_t k = i; k < j; ++k) {
      if (labels[idx[k]] != 0) {
        rank_sum += avg_rank;
        ++positives;
      }
    }
    i = j;
  }
  const std::size_t negatives = scores.size() - positives;
  if (positives == 0 || negatives == 0) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  const double p = static_cast<double>(positives);
  return (rank_sum - p * (p + 1) / 2) / (p * static_cast<double>(negatives));
}

double pearson(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty()) {
    throw DimensionMismatch("pearson: series lengths differ or are empty");
  }
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0 || sbb == 0) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return sab / std::sqrt(saa * sbb);
}

double percentile(std::span<const double> values, double q) {
  if (values.empty()) {
    throw std::invalid_argument("percentile of an empty set");
  }
  if (!(q >= 0 && q <= 100)) {
    throw std::invalid_argument("percentile rank must be in [0, 100]");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double pos = q / 100.0 * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace phasemac::nn
