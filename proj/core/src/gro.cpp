#include "phasemac/gro.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

#include "phasemac/errors.hpp"

namespace phasemac {

namespace {

constexpr int kMaxStages = 255;

void check_stages(int num_stages) {
  if (num_stages < 3 || num_stages % 2 == 0 || num_stages > kMaxStages) {
    throw std::invalid_argument("ring oscillator needs an odd stage count in [3, " +
                                std::to_string(kMaxStages) + "], got " +
                                std::to_string(num_stages));
  }
}

}  // namespace

GroState::GroState(int num_stages, int counter_bits, SaturationPolicy policy)
    : num_stages_(num_stages), counter_bits_(counter_bits), policy_(policy) {
  check_stages(num_stages);
  if (counter_bits < 1 || counter_bits > kMaxCounterBits) {
    throw std::invalid_argument("counter_bits must be in [1, " +
                                std::to_string(kMaxCounterBits) + "], got " +
                                std::to_string(counter_bits));
  }
}

bool GroState::would_saturate(std::uint64_t transitions) const noexcept {
  // capacity() fits comfortably in 64 bits, so compare against the headroom
  // instead of forming read_raw() + transitions.
  return transitions >= capacity() - read_raw();
}

void GroState::advance(std::uint64_t transitions) {
  if (saturated_) {
    return;
  }
  if (would_saturate(transitions)) {
    if (policy_ == SaturationPolicy::kStrict) {
      throw SaturationError("(standalone)", read_raw() + transitions, capacity());
    }
    wrap_counter_ = (std::uint64_t{1} << counter_bits_) - 1;
    phase_index_ = static_cast<int>(period() - 1);
    saturated_ = true;
    return;
  }
  const std::uint64_t total = static_cast<std::uint64_t>(phase_index_) + transitions;
  wrap_counter_ += total / period();
  phase_index_ = static_cast<int>(total % period());
}

void GroState::reset() noexcept {
  phase_index_ = 0;
  wrap_counter_ = 0;
  saturated_ = false;
}

double GroState::phase_radians() const noexcept {
  return phase_index_ * std::numbers::pi / num_stages_;
}

int count_unstable_stages(const PhaseCode& code) {
  const auto n = code.bits.size();
  int unstable = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto input = code.bits[(i + n - 1) % n];
    if (code.bits[i] == input) {
      ++unstable;
    }
  }
  return unstable;
}

PhaseCode encode_phase(int phase_index, int num_stages) {
  check_stages(num_stages);
  if (phase_index < 0 || phase_index >= 2 * num_stages) {
    throw std::invalid_argument("phase index " + std::to_string(phase_index) +
                                " outside [0, " + std::to_string(2 * num_stages) + ")");
  }
  const auto n = static_cast<std::size_t>(num_stages);
  PhaseCode code;
  code.bits.resize(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    code.bits[i] = static_cast<std::uint8_t>(i % 2);
  }
  code.bits[n - 1] = 1;

  // The unstable stage starts at n-1 and moves one stage forward per
  // transition; flipping it makes its successor unstable.
  std::size_t unstable = n - 1;
  for (int t = 0; t < phase_index; ++t) {
    code.bits[unstable] ^= 1U;
    unstable = (unstable + 1) % n;
  }
  return code;
}

int decode_phase(const PhaseCode& code, int num_stages) {
  check_stages(num_stages);
  const auto n = static_cast<std::size_t>(num_stages);
  if (code.bits.size() != n) {
    throw InvalidPhaseCode("phase code has " + std::to_string(code.bits.size()) +
                           " bits, expected " + std::to_string(n));
  }
  std::size_t unstable = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (code.bits[i] > 1) {
      throw InvalidPhaseCode("phase code bit " + std::to_string(i) + " is not binary");
    }
    if (code.bits[i] == code.bits[(i + n - 1) % n]) {
      if (unstable != n) {
        throw InvalidPhaseCode("phase code has more than one unstable stage");
      }
      unstable = i;
    }
  }
  if (unstable == n) {
    throw InvalidPhaseCode("phase code has no unstable stage");
  }
  // Phase p puts the unstable stage at (p + n - 1) mod n, so two phases
  // share each position; stage 0 distinguishes them.
  const int first = static_cast<int>((unstable + 1) % n);
  const int second = first + num_stages;
  return encode_phase(first, num_stages) == code ? first : second;
}

std::uint32_t dtc_pulse(int d_mag) {
  if (d_mag < 0 || d_mag > kMaxDtcInput) {
    throw std::invalid_argument("DTC input " + std::to_string(d_mag) + " outside [0, 127]");
  }
  return static_cast<std::uint32_t>(d_mag);
}

}  // namespace phasemac
