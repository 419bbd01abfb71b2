#include "phasemac/errors.hpp"

namespace phasemac {

namespace {

std::string layer_prefix(int layer) {
  return layer >= 0 ? "layer " + std::to_string(layer) + ": " : std::string{};
}

}  // namespace

SaturationError::SaturationError(std::string gro, std::uint64_t attempted_total,
                                 std::uint64_t capacity, int layer)
    : Error(layer_prefix(layer) + "GRO " + gro + " counter saturated (" +
            std::to_string(attempted_total) + " transitions, capacity " +
            std::to_string(capacity) + "); read out before accumulating further"),
      gro_(std::move(gro)),
      attempted_total_(attempted_total),
      capacity_(capacity),
      layer_(layer) {}

SaturationError SaturationError::at_layer(int layer) const {
  return SaturationError(gro_, attempted_total_, capacity_, layer);
}

CapacityError::CapacityError(std::size_t length, std::uint64_t max_safe_length, int layer)
    : Error(layer_prefix(layer) + "dot product of length " + std::to_string(length) +
            " may saturate the GRO counter; max safe length is " +
            std::to_string(max_safe_length) +
            " (reduce layer width or raise counter_bits)"),
      length_(length),
      max_safe_length_(max_safe_length),
      layer_(layer) {}

CapacityError CapacityError::at_layer(int layer) const {
  return CapacityError(length_, max_safe_length_, layer);
}

FormatError::FormatError(const std::string& what, std::uint64_t offset)
    : Error(what + " (at byte offset " + std::to_string(offset) + ")"), offset_(offset) {}

}  // namespace phasemac
