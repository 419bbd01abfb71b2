#include "phasemac/pmac_unit.hpp"

#include <stdexcept>
#include <string>

#include "phasemac/errors.hpp"

namespace phasemac {

std::string_view to_string(GroId id) {
  switch (id) {
    case GroId::kPosMsb:
      return "pos_msb";
    case GroId::kPosLsb:
      return "pos_lsb";
    case GroId::kNegMsb:
      return "neg_msb";
    case GroId::kNegLsb:
      return "neg_lsb";
  }
  return "unknown";
}

SignMag to_sign_mag(std::int8_t v) noexcept {
  if (v >= 0) {
    return {+1, v};
  }
  return {-1, v == -128 ? 127 : -static_cast<int>(v)};
}

WeightFields split_weight(int w_mag) {
  if (w_mag < 0 || w_mag > 127) {
    throw std::invalid_argument("weight magnitude " + std::to_string(w_mag) +
                                " outside [0, 127]");
  }
  return {w_mag >> kLsbFieldBits, w_mag & kMaxLsbField};
}

PmacUnit::PmacUnit(int counter_bits, int num_stages, SaturationPolicy policy,
                   WeightSplitFn split)
    : gros_{GroState(num_stages, counter_bits, policy), GroState(num_stages, counter_bits, policy),
            GroState(num_stages, counter_bits, policy), GroState(num_stages, counter_bits, policy)},
      split_(split) {}

std::uint64_t PmacUnit::mac(std::int8_t d, std::int8_t w) {
  const auto sd = to_sign_mag(d);
  const auto sw = to_sign_mag(w);
  const auto fields = split_(sw.mag);
  const std::uint64_t pulse = dtc_pulse(sd.mag);
  const std::uint64_t msb_advance = pulse * static_cast<std::uint64_t>(fields.msb);
  const std::uint64_t lsb_advance = pulse * static_cast<std::uint64_t>(fields.lsb);

  const bool positive = sd.sign == sw.sign;
  const GroId msb_id = positive ? GroId::kPosMsb : GroId::kNegMsb;
  const GroId lsb_id = positive ? GroId::kPosLsb : GroId::kNegLsb;
  auto& msb = gros_[static_cast<std::size_t>(msb_id)];
  auto& lsb = gros_[static_cast<std::size_t>(lsb_id)];

  if (msb.policy() == SaturationPolicy::kStrict) {
    if (lsb.would_saturate(lsb_advance)) {
      throw SaturationError(std::string(to_string(lsb_id)), lsb.read_raw() + lsb_advance,
                            lsb.capacity());
    }
    if (msb.would_saturate(msb_advance)) {
      throw SaturationError(std::string(to_string(msb_id)), msb.read_raw() + msb_advance,
                            msb.capacity());
    }
  }
  msb.advance(msb_advance);
  lsb.advance(lsb_advance);
  ++ops_count_;
  return msb_advance + lsb_advance;
}

Readout PmacUnit::readout(bool reset_after) {
  const auto pair_value = [this](GroId msb, GroId lsb) {
    return static_cast<std::int64_t>(gro(msb).read_raw() << kLsbFieldBits) +
           static_cast<std::int64_t>(gro(lsb).read_raw());
  };
  Readout r;
  r.value = pair_value(GroId::kPosMsb, GroId::kPosLsb) - pair_value(GroId::kNegMsb, GroId::kNegLsb);
  for (const auto& g : gros_) {
    r.saturated = r.saturated || g.saturated();
  }
  if (reset_after) {
    reset();
  }
  return r;
}

void PmacUnit::reset() noexcept {
  for (auto& g : gros_) {
    g.reset();
  }
  ops_count_ = 0;
}

std::int64_t ref_dot(std::span<const std::int8_t> d, std::span<const std::int8_t> w) {
  if (d.size() != w.size()) {
    throw DimensionMismatch("ref_dot length mismatch: " + std::to_string(d.size()) + " vs " +
                            std::to_string(w.size()));
  }
  const auto sat = [](std::int8_t v) -> std::int64_t { return v == -128 ? -127 : v; };
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    acc += sat(d[i]) * sat(w[i]);
  }
  return acc;
}

}  // namespace phasemac
