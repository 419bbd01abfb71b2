#include "phasemac/pmac_array.hpp"

#include <string>

#include "phasemac/errors.hpp"

namespace phasemac {

template <typename T>
Matrix<T>::Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw DimensionMismatch("matrix data has " + std::to_string(data_.size()) +
                            " elements, expected " + std::to_string(rows * cols));
  }
}

template class Matrix<std::int8_t>;
template class Matrix<std::int64_t>;

std::uint64_t max_safe_dot_length(int counter_bits, int num_stages) {
  const GroState probe(num_stages, counter_bits);
  constexpr std::uint64_t kFullScaleLsbAdvance = 127 * kMaxLsbField;
  return (probe.capacity() - 1) / kFullScaleLsbAdvance;
}

PmacArray::PmacArray(ArrayConfig config)
    : config_(config), max_safe_(max_safe_dot_length(config.counter_bits, config.num_stages)) {}

void PmacArray::precheck(std::size_t length) const {
  if (length > max_safe_) {
    throw CapacityError(length, max_safe_);
  }
}

std::int64_t PmacArray::accumulate_row(PmacUnit& unit, std::span<const std::int8_t> weights,
                                       std::span<const std::int8_t> x, std::size_t x_offset,
                                       std::size_t x_stride) {
  std::uint64_t transitions = 0;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    transitions += unit.mac(x[x_offset + j * x_stride], weights[j]);
  }
  ledger_.inverter_transitions += transitions;
  ledger_.mac_ops += weights.size();
  ledger_.output_writes += 1;
  return unit.readout(/*reset_after=*/true).value;
}

std::vector<std::int64_t> PmacArray::matvec(const Int8Matrix& w, std::span<const std::int8_t> x) {
  if (w.cols() != x.size()) {
    throw DimensionMismatch("matvec: matrix has " + std::to_string(w.cols()) +
                            " columns, vector has " + std::to_string(x.size()) + " elements");
  }
  precheck(w.cols());
  PmacUnit unit(config_.counter_bits, config_.num_stages);
  std::vector<std::int64_t> y(w.rows());
  for (std::size_t i = 0; i < w.rows(); ++i) {
    y[i] = accumulate_row(unit, w.row(i), x, 0, 1);
  }
  ledger_.weight_reads += w.rows() * w.cols();
  return y;
}

Int64Matrix PmacArray::batched_matmul(const Int8Matrix& w, const Int8Matrix& x) {
  if (w.cols() != x.rows()) {
    throw DimensionMismatch("batched_matmul: matrix has " + std::to_string(w.cols()) +
                            " columns, input has " + std::to_string(x.rows()) + " rows");
  }
  precheck(w.cols());
  const std::size_t batch = x.cols();
  Int64Matrix y(w.rows(), batch);
  PmacUnit unit(config_.counter_bits, config_.num_stages);
  for (std::size_t i = 0; i < w.rows(); ++i) {
    // Row i's weights stay latched while every batch column streams through.
    for (std::size_t b = 0; b < batch; ++b) {
      y(i, b) = accumulate_row(unit, w.row(i), x.data(), b, batch);
    }
  }
  ledger_.weight_reads += w.rows() * w.cols();
  return y;
}

std::vector<std::int64_t> ref_matvec(const Int8Matrix& w, std::span<const std::int8_t> x) {
  if (w.cols() != x.size()) {
    throw DimensionMismatch("ref_matvec: dimension mismatch");
  }
  std::vector<std::int64_t> y(w.rows());
  for (std::size_t i = 0; i < w.rows(); ++i) {
    y[i] = ref_dot(w.row(i), x);
  }
  return y;
}

}  // namespace phasemac
