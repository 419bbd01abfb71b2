#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

#include "phasemac/gro.hpp"

namespace phasemac {

enum class GroId { kPosMsb = 0, kPosLsb = 1, kNegMsb = 2, kNegLsb = 3 };

std::string_view to_string(GroId id);

/// Sign and 7-bit magnitude of an int8 operand. Zero carries sign +1.
struct SignMag {
  int sign;
  int mag;

  friend bool operator==(const SignMag&, const SignMag&) = default;
};

/// -128 has no 7-bit magnitude and clamps to (-1, 127).
SignMag to_sign_mag(std::int8_t v) noexcept;

/// 7-bit weight magnitude split into the 3-bit MSB and 4-bit LSB fields that
/// drive the two GROs of a pair.
struct WeightFields {
  int msb;
  int lsb;

  friend bool operator==(const WeightFields&, const WeightFields&) = default;
};

inline constexpr int kLsbFieldBits = 4;
inline constexpr int kMaxMsbField = 7;
inline constexpr int kMaxLsbField = 15;

WeightFields split_weight(int w_mag);

using WeightSplitFn = WeightFields (*)(int);

struct Readout {
  std::int64_t value = 0;
  bool saturated = false;
};

/// Signed 8-bit MAC built from four GROs.
///
/// The XNOR of the operand signs picks the positive or the negative pair.
/// Within a pair the DTC pulse (|d| ticks) gates both GROs; the MSB GRO runs
/// at the 3-bit field's frequency and the LSB GRO at the 4-bit field's, so
/// each advances by |d| times its field. Readout shifts the MSB count left by
/// four, adds the LSB count, and subtracts the negative pair from the
/// positive one.
class PmacUnit {
 public:
  explicit PmacUnit(int counter_bits = GroState::kDefaultCounterBits,
                    int num_stages = GroState::kDefaultStages,
                    SaturationPolicy policy = SaturationPolicy::kStrict,
                    WeightSplitFn split = &split_weight);

  /// Accumulates d*w. Returns the inverter transitions spent. In strict mode
  /// throws SaturationError naming the GRO that would overflow, leaving every
  /// GRO untouched.
  std::uint64_t mac(std::int8_t d, std::int8_t w);

  Readout readout(bool reset_after = false);

  void reset() noexcept;

  const GroState& gro(GroId id) const noexcept { return gros_[static_cast<std::size_t>(id)]; }
  std::uint64_t ops_count() const noexcept { return ops_count_; }

 private:
  std::array<GroState, 4> gros_;
  WeightSplitFn split_;
  std::uint64_t ops_count_ = 0;
};

/// Reference dot product in wide integers; -128 clamps to -127 as in
/// to_sign_mag. Throws DimensionMismatch on unequal lengths.
std::int64_t ref_dot(std::span<const std::int8_t> d, std::span<const std::int8_t> w);

}  // namespace phasemac
