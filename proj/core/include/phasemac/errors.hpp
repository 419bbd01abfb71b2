#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace phasemac {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A wrap counter would exceed its capacity. Carries the name of the
/// offending oscillator and, when raised from a network forward pass, the
/// layer index.
class SaturationError : public Error {
 public:
  SaturationError(std::string gro, std::uint64_t attempted_total, std::uint64_t capacity,
                  int layer = -1);

  const std::string& gro() const noexcept { return gro_; }
  std::uint64_t attempted_total() const noexcept { return attempted_total_; }
  std::uint64_t capacity() const noexcept { return capacity_; }
  int layer() const noexcept { return layer_; }

  SaturationError at_layer(int layer) const;

 private:
  std::string gro_;
  std::uint64_t attempted_total_;
  std::uint64_t capacity_;
  int layer_;
};

/// A dot product is longer than the counter can hold at full-scale operands.
class CapacityError : public Error {
 public:
  CapacityError(std::size_t length, std::uint64_t max_safe_length, int layer = -1);

  std::size_t length() const noexcept { return length_; }
  std::uint64_t max_safe_length() const noexcept { return max_safe_length_; }
  int layer() const noexcept { return layer_; }

  CapacityError at_layer(int layer) const;

 private:
  std::size_t length_;
  std::uint64_t max_safe_length_;
  int layer_;
};

class InvalidPhaseCode : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class TrainingError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file. `offset` is the position of the first bad byte.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::uint64_t offset);
  std::uint64_t offset() const noexcept { return offset_; }

 private:
  std::uint64_t offset_;
};

}  // namespace phasemac
