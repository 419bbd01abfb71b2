#pragma once

#include <cstdint>
#include <vector>

namespace phasemac {

enum class SaturationPolicy {
  kStrict,  // advancing past capacity throws SaturationError
  kSticky,  // clamp at capacity and latch the saturated flag
};

/// One gated ring oscillator used as a phase-domain accumulator.
///
/// The phase is kept in inverter-transition units: one unit is pi/num_stages
/// radians, so a full 2*pi turn is 2*num_stages units. Every completed turn
/// increments the wrap counter. The raw readout concatenates the counter
/// (MSBs) with the phase (LSBs):
///
///   read_raw() == wrap_counter * 2*num_stages + phase_index
///
/// which equals the number of transitions applied since the last reset.
class GroState {
 public:
  static constexpr int kDefaultStages = 5;
  static constexpr int kDefaultCounterBits = 20;
  static constexpr int kMaxCounterBits = 48;

  /// Throws std::invalid_argument for an even or <3 stage ring, or
  /// counter_bits outside [1, kMaxCounterBits].
  explicit GroState(int num_stages = kDefaultStages, int counter_bits = kDefaultCounterBits,
                    SaturationPolicy policy = SaturationPolicy::kStrict);

  /// Lets the ring run for `transitions` inverter delays. Throws
  /// SaturationError (strict policy) when the counter would reach
  /// 2^counter_bits; the state is left untouched in that case.
  void advance(std::uint64_t transitions);

  /// True if advancing by `transitions` would overflow the wrap counter.
  bool would_saturate(std::uint64_t transitions) const noexcept;

  /// Counter and phase concatenated. A lower bound when saturated().
  std::uint64_t read_raw() const noexcept {
    return wrap_counter_ * period() + static_cast<std::uint64_t>(phase_index_);
  }

  void reset() noexcept;

  int num_stages() const noexcept { return num_stages_; }
  int counter_bits() const noexcept { return counter_bits_; }
  int phase_index() const noexcept { return phase_index_; }
  std::uint64_t wrap_counter() const noexcept { return wrap_counter_; }
  bool saturated() const noexcept { return saturated_; }
  SaturationPolicy policy() const noexcept { return policy_; }

  /// Transitions per full turn (2*num_stages).
  std::uint64_t period() const noexcept { return 2 * static_cast<std::uint64_t>(num_stages_); }

  /// Total transitions the state can hold: 2^counter_bits * period().
  std::uint64_t capacity() const noexcept { return (std::uint64_t{1} << counter_bits_) * period(); }

  double phase_radians() const noexcept;

  friend bool operator==(const GroState&, const GroState&) = default;

 private:
  int num_stages_;
  int counter_bits_;
  SaturationPolicy policy_;
  int phase_index_ = 0;
  std::uint64_t wrap_counter_ = 0;
  bool saturated_ = false;
};

/// Snapshot of all inverter outputs, latched to quantize the GRO phase.
struct PhaseCode {
  std::vector<std::uint8_t> bits;

  friend bool operator==(const PhaseCode&, const PhaseCode&) = default;
};

/// Inverter-output pattern after `phase_index` single-stage transitions from
/// the reference state. The reference (phase 0) has its only unstable stage
/// at index num_stages-1 and stage 0 low: 0,1,0,1,...,1.
PhaseCode encode_phase(int phase_index, int num_stages);

/// Inverse of encode_phase. Throws InvalidPhaseCode for any pattern that does
/// not have exactly one unstable stage.
int decode_phase(const PhaseCode& code, int num_stages);

/// Number of stages whose output equals their ring input.
int count_unstable_stages(const PhaseCode& code);

inline constexpr int kMaxDtcInput = 127;

/// DTC pulse width for a 7-bit input magnitude, in t_inv ticks.
std::uint32_t dtc_pulse(int d_mag);

}  // namespace phasemac
