#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "phasemac/errors.hpp"
#include "phasemac/pmac_array.hpp"
#include "phasemac/pmac_unit.hpp"

using phasemac::GroId;
using phasemac::PmacUnit;
using phasemac::SignMag;
using phasemac::WeightFields;

TEST(SignMag, Conversion) {
  EXPECT_EQ(phasemac::to_sign_mag(3), (SignMag{1, 3}));
  EXPECT_EQ(phasemac::to_sign_mag(-5), (SignMag{-1, 5}));
  EXPECT_EQ(phasemac::to_sign_mag(0), (SignMag{1, 0}));
  EXPECT_EQ(phasemac::to_sign_mag(-128), (SignMag{-1, 127}));
  EXPECT_EQ(phasemac::to_sign_mag(127), (SignMag{1, 127}));
}

TEST(SplitWeight, Examples) {
  EXPECT_EQ(phasemac::split_weight(100), (WeightFields{6, 4}));
  EXPECT_EQ(phasemac::split_weight(0), (WeightFields{0, 0}));
  EXPECT_EQ(phasemac::split_weight(127), (WeightFields{7, 15}));
  EXPECT_ANY_THROW(phasemac::split_weight(128));
  EXPECT_ANY_THROW(phasemac::split_weight(-1));
}

TEST(SplitWeight, ReconstructsEveryMagnitude) {
  for (int w = 0; w <= 127; ++w) {
    const auto f = phasemac::split_weight(w);
    EXPECT_EQ(f.msb * 16 + f.lsb, w);
    EXPECT_LE(f.msb, 7);
    EXPECT_LE(f.lsb, 15);
  }
}

TEST(PmacUnit, UnitWeightDrivesOnlyPositiveLsb) {
  PmacUnit u;
  EXPECT_EQ(u.mac(3, 1), 3u);
  EXPECT_EQ(u.gro(GroId::kPosLsb).read_raw(), 3u);
  EXPECT_EQ(u.gro(GroId::kPosMsb).read_raw(), 0u);
  EXPECT_EQ(u.gro(GroId::kNegLsb).read_raw(), 0u);
  EXPECT_EQ(u.gro(GroId::kNegMsb).read_raw(), 0u);
}

TEST(PmacUnit, ZeroInputAdvancesNothing) {
  PmacUnit u;
  EXPECT_EQ(u.mac(0, 93), 0u);
  EXPECT_EQ(u.readout().value, 0);
  EXPECT_EQ(u.ops_count(), 1u);
}

TEST(PmacUnit, NegativeProductUsesNegativePair) {
  PmacUnit u;
  EXPECT_EQ(u.mac(-5, 7), 35u);
  EXPECT_EQ(u.gro(GroId::kNegLsb).read_raw(), 35u);
  EXPECT_EQ(u.readout().value, -35);
}

TEST(PmacUnit, ShiftedMsbPlusLsb) {
  PmacUnit u;
  u.mac(2, 100);
  EXPECT_EQ(u.gro(GroId::kPosMsb).read_raw(), 12u);
  EXPECT_EQ(u.gro(GroId::kPosLsb).read_raw(), 8u);
  EXPECT_EQ(u.readout().value, 200);
}

TEST(PmacUnit, FreshReadoutIsZero) {
  PmacUnit u;
  const auto r = u.readout();
  EXPECT_EQ(r.value, 0);
  EXPECT_FALSE(r.saturated);
}

TEST(PmacUnit, SignedAccumulation) {
  PmacUnit u;
  u.mac(3, 1);
  u.mac(-5, 7);
  EXPECT_EQ(u.readout().value, -32);
}

TEST(PmacUnit, ReadoutWithResetClears) {
  PmacUnit u;
  u.mac(100, -100);
  EXPECT_EQ(u.readout(true).value, -10000);
  EXPECT_EQ(u.readout().value, 0);
  EXPECT_EQ(u.ops_count(), 0u);
}

TEST(PmacUnit, SignRoutingFollowsXnor) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> dist(-128, 127);
  for (int i = 0; i < 20000; ++i) {
    PmacUnit u;
    const auto d = static_cast<std::int8_t>(dist(rng));
    const auto w = static_cast<std::int8_t>(dist(rng));
    const auto t = u.mac(d, w);
    const bool positive = (d >= 0) == (w >= 0);
    const auto untouched = positive ? GroId::kNegLsb : GroId::kPosLsb;
    const auto untouched_msb = positive ? GroId::kNegMsb : GroId::kPosMsb;
    ASSERT_EQ(u.gro(untouched).read_raw(), 0u);
    ASSERT_EQ(u.gro(untouched_msb).read_raw(), 0u);
    const auto sd = phasemac::to_sign_mag(d), sw = phasemac::to_sign_mag(w);
    const auto f = phasemac::split_weight(sw.mag);
    ASSERT_EQ(t, static_cast<std::uint64_t>(sd.mag * (f.msb + f.lsb)));
    ASSERT_LE(t, 2794u);
  }
}

TEST(PmacUnit, RandomVectorsMatchNaiveDot) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> dist(-128, 127);
  std::uniform_int_distribution<int> len(0, 400);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = len(rng);
    std::vector<std::int8_t> d(n), w(n);
    for (int i = 0; i < n; ++i) {
      d[i] = static_cast<std::int8_t>(dist(rng));
      w[i] = static_cast<std::int8_t>(dist(rng));
    }
    PmacUnit u;
    std::uint64_t transitions = 0;
    for (int i = 0; i < n; ++i) transitions += u.mac(d[i], w[i]);
    const auto expected = oracle::naive_dot(d, w);
    ASSERT_EQ(u.readout().value, expected);
    ASSERT_EQ(phasemac::ref_dot(d, w), expected);
    std::uint64_t gro_sum = 0;
    for (auto id : {GroId::kPosMsb, GroId::kPosLsb, GroId::kNegMsb, GroId::kNegLsb}) {
      gro_sum += u.gro(id).read_raw();
    }
    ASSERT_EQ(gro_sum, transitions);
  }
}

TEST(PmacUnit, SaturationNamesTheGroAndLeavesStateIntact) {
  PmacUnit u(4, 5);  // capacity 160 transitions per GRO
  u.mac(10, 15);     // 150 on pos_lsb
  const auto before = u.gro(GroId::kPosLsb);
  try {
    u.mac(1, 15);
    FAIL() << "expected saturation";
  } catch (const phasemac::SaturationError& e) {
    EXPECT_EQ(e.gro(), "pos_lsb");
    EXPECT_NE(std::string(e.what()).find("pos_lsb"), std::string::npos);
  }
  EXPECT_EQ(u.gro(GroId::kPosLsb), before);
  EXPECT_EQ(u.ops_count(), 1u);

  PmacUnit n(4, 5);
  n.mac(-10, 15);
  EXPECT_THROW(n.mac(-1, 15), phasemac::SaturationError);
  try {
    n.mac(1, -15);
    FAIL() << "expected saturation";
  } catch (const phasemac::SaturationError& e) {
    EXPECT_EQ(e.gro(), "neg_lsb");
  }
}

TEST(PmacUnit, StickyUnitFlagsReadout) {
  PmacUnit u(2, 5, phasemac::SaturationPolicy::kSticky);
  u.mac(127, 127);
  EXPECT_TRUE(u.readout().saturated);
}

TEST(RefDot, Examples) {
  const std::vector<std::int8_t> a{3}, b{1};
  EXPECT_EQ(phasemac::ref_dot(a, b), 3);
  EXPECT_EQ(phasemac::ref_dot({}, {}), 0);
  const std::vector<std::int8_t> d{2, -5}, w{100, 7};
  EXPECT_EQ(phasemac::ref_dot(d, w), 165);
  EXPECT_THROW(phasemac::ref_dot(d, a), phasemac::DimensionMismatch);
}

TEST(MaxSafeLength, FormulaAndBruteForceAgree) {
  EXPECT_EQ(phasemac::max_safe_dot_length(20, 5), 5504u);
  EXPECT_EQ(phasemac::max_safe_dot_length(1, 5), 0u);
  EXPECT_GE(phasemac::max_safe_dot_length(20, 5), 400u);
  for (int bits : {8, 10, 12, 16, 20}) {
    for (int stages : {3, 5, 7}) {
      EXPECT_EQ(phasemac::max_safe_dot_length(bits, stages),
                oracle::brute_force_max_safe(bits, stages))
          << bits << " bits, " << stages << " stages";
    }
  }
}
