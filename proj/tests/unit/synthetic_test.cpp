#include <gtest/gtest.h>

#include <cmath>

#include "phasemac/experiments/synthetic.hpp"

namespace px = phasemac::experiments;

TEST(Synthetic, NoiselessToneIsPeriodic) {
  px::SyntheticConfig c;
  c.n = 4000;
  c.base_freqs = {1.0 / 50};
  c.amplitudes = {1.0};
  const auto s = px::gen_synthetic(c);
  ASSERT_EQ(s.samples.size(), 4000u);
  for (std::size_t i = 0; i + 50 < s.samples.size(); ++i) {
    ASSERT_NEAR(s.samples[i], s.samples[i + 50], 1e-5) << i;
  }
}

TEST(Synthetic, SameSeedSameSeries) {
  px::SyntheticConfig c;
  c.noise_sigma = 0.1;
  c.base_freqs = {1.0 / 50, 1.0 / 18.5};
  c.amplitudes = {1.0, 0.5};
  c.spans = px::place_spans(c.n, 2, 400);
  EXPECT_EQ(px::gen_synthetic(c).samples, px::gen_synthetic(c).samples);
  auto d = c;
  d.seed = 2;
  EXPECT_NE(px::gen_synthetic(c).samples, px::gen_synthetic(d).samples);
}

TEST(Synthetic, AmplitudeSpanScalesSamples) {
  px::SyntheticConfig c;
  const auto normal = px::gen_synthetic(c);
  c.spans = {{1000, 1500, px::AnomalyKind::kAmplitudeShift}};
  c.amp_shift = 0.5;
  const auto shifted = px::gen_synthetic(c);
  for (std::size_t i = 0; i < c.n; ++i) {
    const float k = (i >= 1000 && i < 1500) ? 1.5f : 1.0f;
    ASSERT_NEAR(shifted.samples[i], k * normal.samples[i], 1e-5) << i;
  }
  EXPECT_EQ(shifted.anomaly_spans, c.spans);
}

TEST(Synthetic, FrequencySpanChangesLocalPeriod) {
  px::SyntheticConfig c;
  c.spans = {{1000, 2000, px::AnomalyKind::kFrequencyShift}};
  const auto s = px::gen_synthetic(c);
  // 1/50 * 1.25 = 1/40 cycles per sample inside the span.
  for (std::size_t i = 1100; i + 40 < 1900; ++i) {
    ASSERT_NEAR(s.samples[i], s.samples[i + 40], 1e-4);
  }
  for (std::size_t i = 2100; i + 50 < c.n; ++i) {
    ASSERT_NEAR(s.samples[i], s.samples[i + 50], 1e-4);
  }
}

TEST(Synthetic, InvalidConfigsRejected) {
  px::SyntheticConfig c;
  c.n = 1599;
  EXPECT_THROW(px::gen_synthetic(c), std::invalid_argument);
  c.n = 4000;
  c.spans = {{3900, 4100, px::AnomalyKind::kAmplitudeShift}};
  EXPECT_THROW(px::gen_synthetic(c), std::invalid_argument);
  c.spans = {{100, 500, px::AnomalyKind::kAmplitudeShift}, {400, 800, px::AnomalyKind::kAmplitudeShift}};
  EXPECT_THROW(px::gen_synthetic(c), std::invalid_argument);
  c.spans = {{500, 500, px::AnomalyKind::kAmplitudeShift}};
  EXPECT_THROW(px::gen_synthetic(c), std::invalid_argument);
  c.spans.clear();
  c.amplitudes = {1.0, 2.0};
  EXPECT_THROW(px::gen_synthetic(c), std::invalid_argument);
}

TEST(Synthetic, PlacedSpansAreInBoundsAndDisjoint) {
  for (std::size_t count : {1u, 2u, 4u, 7u}) {
    const auto spans = px::place_spans(24000, count, 2400);
    ASSERT_EQ(spans.size(), count);
    for (std::size_t i = 0; i < spans.size(); ++i) {
      EXPECT_LT(spans[i].start, spans[i].end);
      EXPECT_LE(spans[i].end, 24000u);
      EXPECT_EQ(spans[i].end - spans[i].start, 2400u);
      if (i > 0) {
        EXPECT_GE(spans[i].start, spans[i - 1].end);
        EXPECT_NE(spans[i].kind, spans[i - 1].kind);
      }
    }
  }
}

TEST(Synthetic, WindowsAndOverlap) {
  EXPECT_EQ(px::window_starts(10, 4, 3), (std::vector<std::size_t>{0, 3, 6}));
  EXPECT_TRUE(px::window_starts(3, 4, 1).empty());
  const std::vector<px::AnomalySpan> spans{{10, 20, px::AnomalyKind::kFrequencyShift}};
  EXPECT_FALSE(px::overlaps_anomaly(spans, 0, 10));
  EXPECT_TRUE(px::overlaps_anomaly(spans, 1, 10));
  EXPECT_TRUE(px::overlaps_anomaly(spans, 19, 5));
  EXPECT_FALSE(px::overlaps_anomaly(spans, 20, 5));
}
