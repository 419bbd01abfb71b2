#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "phasemac/gro.hpp"
#include "phasemac/pmac_array.hpp"
#include "phasemac/pmac_unit.hpp"

// Randomized invariants over the GRO accumulator and PMAC datapath.

TEST(Property, GroReadRawEqualsSumOfAdvances) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 500; ++trial) {
    const int stages = 3 + 2 * static_cast<int>(rng() % 6);
    phasemac::GroState g(stages, 30);
    std::uint64_t total = 0;
    const auto k = rng() % 50;
    for (std::uint64_t i = 0; i < k; ++i) {
      const auto a = rng() % 100000;
      g.advance(a);
      total += a;
      ASSERT_LT(g.phase_index(), 2 * stages);
    }
    ASSERT_EQ(g.read_raw(), total);
  }
}

TEST(Property, PairSumsMatchSignedProducts) {
  std::mt19937_64 rng(22);
  std::uniform_int_distribution<int> dist(-128, 127);
  for (int trial = 0; trial < 2000; ++trial) {
    phasemac::PmacUnit u;
    std::int64_t pos = 0, neg = 0;
    for (int i = 0; i < 50; ++i) {
      const auto d = static_cast<std::int8_t>(dist(rng));
      const auto w = static_cast<std::int8_t>(dist(rng));
      u.mac(d, w);
      const auto p = oracle::naive_dot(std::span(&d, 1), std::span(&w, 1));
      ((d >= 0) == (w >= 0) ? pos : neg) += p >= 0 ? p : -p;
      using phasemac::GroId;
      ASSERT_EQ(static_cast<std::int64_t>(u.gro(GroId::kPosMsb).read_raw() * 16 +
                                          u.gro(GroId::kPosLsb).read_raw()),
                pos);
      ASSERT_EQ(static_cast<std::int64_t>(u.gro(GroId::kNegMsb).read_raw() * 16 +
                                          u.gro(GroId::kNegLsb).read_raw()),
                neg);
    }
  }
}

TEST(Property, BatchedMatmulEqualsReference) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> dist(-128, 127);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = 1 + rng() % 12, n = rng() % 50, b = 1 + rng() % 9;
    phasemac::Int8Matrix w(m, n), x(n, b);
    for (auto& v : w.data()) v = static_cast<std::int8_t>(dist(rng));
    for (auto& v : x.data()) v = static_cast<std::int8_t>(dist(rng));
    phasemac::PmacArray a;
    const auto y = a.batched_matmul(w, x);
    for (std::size_t j = 0; j < b; ++j) {
      std::vector<std::int8_t> col(n);
      for (std::size_t k = 0; k < n; ++k) col[k] = x(k, j);
      for (std::size_t i = 0; i < m; ++i) ASSERT_EQ(y(i, j), oracle::naive_dot(w.row(i), col));
    }
  }
}
