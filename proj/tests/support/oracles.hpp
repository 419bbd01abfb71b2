#pragma once

#include <cstdint>
#include <span>
#include <vector>

// Independent reference models used only by the tests. None of them call
// into the library code they check.
namespace oracle {

/// Explicit inverter ring. Stage i inverts the output of stage i-1; a stage
/// whose output equals its input is about to switch.
class Ring {
 public:
  explicit Ring(int stages);

  std::vector<int> unstable() const;
  void step();  // fires the single unstable stage
  const std::vector<std::uint8_t>& outputs() const { return out_; }

 private:
  std::vector<std::uint8_t> out_;
};

/// Oscillator state advanced one transition at a time.
struct SteppedGro {
  int stages;
  int counter_bits;
  int phase = 0;
  std::uint64_t counter = 0;
  bool overflowed = false;

  void tick();
  void run(std::uint64_t n) {
    for (std::uint64_t i = 0; i < n; ++i) tick();
  }
  std::uint64_t raw() const { return counter * 2 * static_cast<std::uint64_t>(stages) + phase; }
};

/// Longest run of mac(127, 127) a fresh PMAC unit accepts before throwing.
std::uint64_t brute_force_max_safe(int counter_bits, int stages);

/// Solves r(b) = x/b + c through two anchor points by Cramer's rule.
struct LineFit {
  double x;
  double c;
};
LineFit solve_batch_anchors(double b1, double r1, double b2, double r2);

std::int64_t naive_dot(std::span<const std::int8_t> a, std::span<const std::int8_t> b);

/// Pairwise AUC counting ties as one half.
double pairwise_auc(std::span<const double> scores, std::span<const std::uint8_t> labels);

double two_pass_pearson(std::span<const double> a, std::span<const double> b);

/// Symmetric quantization evaluated in long double.
std::vector<int> quantize_long_double(std::span<const float> x, int bits, long double* scale);

}  // namespace oracle
