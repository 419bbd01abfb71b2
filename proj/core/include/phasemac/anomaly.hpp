#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "phasemac/inference.hpp"

namespace phasemac::nn {

inline constexpr std::size_t kDefaultHorizon = 400;

/// Mean squared error between two equal-length series.
double mse(std::span<const float> prediction, std::span<const float> target);

/// Prediction error of a forecaster on one window of 2H samples: the first H
/// are fed to the model, the last H are the target.
double anomaly_score(Inference& engine, std::span<const float> window);
double anomaly_score(const FcModel& model, std::span<const float> window, int bits,
                     Backend backend);

/// Pointwise `score > threshold`. Throws std::invalid_argument unless
/// threshold > 0.
std::vector<bool> detect(std::span<const double> scores, double threshold);

/// Area under the ROC curve (Mann-Whitney U with average ranks for ties).
/// labels are 1 for anomalous, 0 for normal. NaN if either class is empty.
double roc_auc(std::span<const double> scores, std::span<const std::uint8_t> labels);

/// Pearson correlation. NaN when either series is constant.
double pearson(std::span<const double> a, std::span<const double> b);

/// q-th percentile (q in [0, 100]) with linear interpolation between order
/// statistics.
double percentile(std::span<const double> values, double q);

}  // namespace phasemac::nn
