#include <gtest/gtest.h>

#include "phasemac/experiments/commands.hpp"

namespace px = phasemac::experiments;

namespace {

phasemac::WeightFields off_by_one_split(int w) {
  auto f = phasemac::split_weight(w);
  if (f.lsb == 15) {
    f.lsb = 14;
  }
  return f;
}

px::OracleSettings quick() {
  px::OracleSettings s;
  s.trials = 20000;
  return s;
}

}  // namespace

TEST(Oracle, DefaultDatapathHasNoMismatches) {
  const auto r = px::run_oracle(quick(), 1);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.trials, 20000u);
  EXPECT_EQ(r.max_safe_length, 5504u);
  EXPECT_GT(r.boundary_cases, 0u);
  EXPECT_GT(r.saturation_checks, 0u);
  EXPECT_FALSE(r.first_failure.has_value());
}

TEST(Oracle, InjectedSplitFaultIsDetected) {
  const auto r = px::run_oracle(quick(), 1, &off_by_one_split);
  EXPECT_FALSE(r.passed());
  ASSERT_TRUE(r.first_failure.has_value());
  EXPECT_NE(r.first_failure->expected, r.first_failure->actual);
  EXPECT_EQ(phasemac::ref_dot(r.first_failure->d, r.first_failure->w), r.first_failure->expected);
}

TEST(Oracle, SmallCounterStillExact) {
  auto s = quick();
  s.counter_bits = 14;
  const auto r = px::run_oracle(s, 3);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.max_safe_length, phasemac::max_safe_dot_length(14, 5));
}
