#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "phasemac/gro.hpp"
#include "phasemac/pmac_unit.hpp"

namespace phasemac {

/// Event counts accumulated while the array runs. Forms a commutative monoid
/// under +=, so per-row ledgers can be merged in any order.
struct EnergyLedger {
  std::uint64_t inverter_transitions = 0;
  std::uint64_t mac_ops = 0;
  std::uint64_t weight_reads = 0;
  std::uint64_t output_writes = 0;

  EnergyLedger& operator+=(const EnergyLedger& o) noexcept {
    inverter_transitions += o.inverter_transitions;
    mac_ops += o.mac_ops;
    weight_reads += o.weight_reads;
    output_writes += o.output_writes;
    return *this;
  }
  friend EnergyLedger operator+(EnergyLedger a, const EnergyLedger& b) noexcept { return a += b; }
  friend bool operator==(const EnergyLedger&, const EnergyLedger&) = default;
};

/// Dense row-major matrix.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<T> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

  std::span<const T> data() const noexcept { return data_; }
  std::span<T> data() noexcept { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using Int8Matrix = Matrix<std::int8_t>;
using Int64Matrix = Matrix<std::int64_t>;

struct ArrayConfig {
  int counter_bits = GroState::kDefaultCounterBits;
  int num_stages = GroState::kDefaultStages;
};

/// Largest dot-product length N with N*127*15 < 2^counter_bits * 2*num_stages,
/// i.e. the longest run of full-scale operands the LSB GRO can absorb.
std::uint64_t max_safe_dot_length(int counter_bits, int num_stages);

/// Bank of PMAC units, one per output row, that evaluates matrix products and
/// records the events needed by the energy model.
class PmacArray {
 public:
  explicit PmacArray(ArrayConfig config = {});

  /// y = W x, exact. Throws DimensionMismatch, or CapacityError if the row
  /// length exceeds max_safe_dot_length.
  std::vector<std::int64_t> matvec(const Int8Matrix& w, std::span<const std::int8_t> x);

  /// Y = W X for X of shape N x batch. Each weight is read once and broadcast
  /// across all batch columns.
  Int64Matrix batched_matmul(const Int8Matrix& w, const Int8Matrix& x);

  const EnergyLedger& ledger() const noexcept { return ledger_; }
  void reset_ledger() noexcept { ledger_ = {}; }
  const ArrayConfig& config() const noexcept { return config_; }

 private:
  void precheck(std::size_t length) const;
  std::int64_t accumulate_row(PmacUnit& unit, std::span<const std::int8_t> weights,
                              std::span<const std::int8_t> x, std::size_t x_offset,
                              std::size_t x_stride);

  ArrayConfig config_;
  std::uint64_t max_safe_;
  EnergyLedger ledger_;
};

/// Integer reference for W x.
std::vector<std::int64_t> ref_matvec(const Int8Matrix& w, std::span<const std::int8_t> x);

}  // namespace phasemac
