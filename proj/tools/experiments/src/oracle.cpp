#include <random>

#include "phasemac/errors.hpp"
#include "phasemac/experiments/commands.hpp"
#include "phasemac/experiments/csv.hpp"
#include "phasemac/pmac_array.hpp"

namespace phasemac::experiments {

namespace {

enum class OperandMix { kUniform, kSmall, kFullScale, kSparse };

std::int8_t draw(std::mt19937_64& rng, OperandMix mix) {
  switch (mix) {
    case OperandMix::kUniform:
      return static_cast<std::int8_t>(std::uniform_int_distribution<int>(-128, 127)(rng));
    case OperandMix::kSmall:
      return static_cast<std::int8_t>(std::uniform_int_distribution<int>(-16, 16)(rng));
    case OperandMix::kFullScale: {
      static constexpr std::int8_t kEdges[] = {-128, -127, -1, 0, 1, 15, 16, 126, 127};
      return kEdges[std::uniform_int_distribution<std::size_t>(0, std::size(kEdges) - 1)(rng)];
    }
    case OperandMix::kSparse:
      if (std::uniform_int_distribution<int>(0, 3)(rng) != 0) {
        return 0;
      }
      return static_cast<std::int8_t>(std::uniform_int_distribution<int>(-128, 127)(rng));
  }
  return 0;
}

struct Outcome {
  std::int64_t value = 0;
  bool threw = false;
  std::string gro;
};

Outcome run_pmac(const std::vector<std::int8_t>& d, const std::vector<std::int8_t>& w,
                 int counter_bits, WeightSplitFn split) {
  PmacUnit unit(counter_bits, GroState::kDefaultStages, SaturationPolicy::kStrict, split);
  try {
    for (std::size_t i = 0; i < d.size(); ++i) {
      unit.mac(d[i], w[i]);
    }
  } catch (const SaturationError& e) {
    return {0, true, e.gro()};
  }
  return {unit.readout().value, false, {}};
}

}  // namespace

OracleResult run_oracle(const OracleSettings& settings, std::uint64_t seed, WeightSplitFn split) {
  OracleResult result;
  result.max_safe_length = max_safe_dot_length(settings.counter_bits, GroState::kDefaultStages);
  std::mt19937_64 rng(seed);
  std::vector<std::int8_t> d;
  std::vector<std::int8_t> w;

  auto record_mismatch = [&](std::int64_t expected, std::int64_t actual, std::string note) {
    ++result.mismatches;
    if (!result.first_failure) {
      result.first_failure = OracleCounterexample{d, w, expected, actual, std::move(note)};
    }
  };

  std::uniform_int_distribution<std::size_t> length_dist(0, settings.max_length);
  std::uniform_int_distribution<int> mix_dist(0, 3);
  for (std::uint64_t t = 0; t < settings.trials; ++t) {
    const auto len = std::min<std::size_t>(length_dist(rng), result.max_safe_length);
    const auto mix = static_cast<OperandMix>(mix_dist(rng));
    d.resize(len);
    w.resize(len);
    for (std::size_t i = 0; i < len; ++i) {
      d[i] = draw(rng, mix);
      w[i] = draw(rng, mix);
    }
    const auto expected = ref_dot(d, w);
    const auto got = run_pmac(d, w, settings.counter_bits, split);
    ++result.trials;
    result.macs += len;
    if (got.threw) {
      record_mismatch(expected, 0, "unexpected saturation of " + got.gro);
    } else if (got.value != expected) {
      record_mismatch(expected, got.value, "value mismatch");
    }
  }

  // Capacity edge: max_safe_length full-scale products fit, one more must
  // saturate the LSB GRO of the active pair.
  const std::size_t edge = result.max_safe_length;
  for (std::size_t k = 0; k < settings.boundary_trials && edge > 0; ++k) {
    const bool negative = k % 2 == 1;
    const std::size_t len = edge - std::min<std::size_t>(edge, k / 2);
    d.assign(len, 127);
    w.assign(len, negative ? std::int8_t{-127} : std::int8_t{127});
    const auto expected = ref_dot(d, w);
    const auto got = run_pmac(d, w, settings.counter_bits, split);
    ++result.boundary_cases;
    result.macs += len;
    if (got.threw || got.value != expected) {
      record_mismatch(expected, got.value,
                      got.threw ? "saturated below capacity (" + got.gro + ")" : "edge mismatch");
    }

    d.assign(edge + 1, 127);
    w.assign(edge + 1, negative ? std::int8_t{-127} : std::int8_t{127});
    const auto over = run_pmac(d, w, settings.counter_bits, split);
    ++result.saturation_checks;
    const std::string want = negative ? "neg_lsb" : "pos_lsb";
    if (!over.threw || over.gro != want) {
      record_mismatch(ref_dot(d, w), over.value,
                      "expected saturation of " + want + " one past capacity");
    }
  }
  return result;
}

int cmd_oracle(const ExperimentConfig& cfg, std::ostream& log) {
  const auto r = run_oracle(cfg.oracle, cfg.seed);

  CsvWriter csv("oracle", {"metric", "value"});
  csv.cell("seed").cell(cfg.seed).end_row();
  csv.cell("trials").cell(r.trials).end_row();
  csv.cell("macs").cell(r.macs).end_row();
  csv.cell("boundary_cases").cell(r.boundary_cases).end_row();
  csv.cell("saturation_checks").cell(r.saturation_checks).end_row();
  csv.cell("max_safe_dot_length").cell(r.max_safe_length).end_row();
  csv.cell("mismatches").cell(r.mismatches).end_row();
  write_file_atomic(cfg.out_dir / "oracle.csv", csv.str());

  log << "oracle: " << r.trials << " random dot products + " << r.boundary_cases
      << " capacity-edge cases + " << r.saturation_checks << " saturation checks, " << r.macs
      << " MACs, " << r.mismatches << " mismatches\n";
  if (r.first_failure) {
    const auto& f = *r.first_failure;
    log << "first counterexample (" << f.note << "): length " << f.d.size() << ", expected "
        << f.expected << ", got " << f.actual << "\n  d =";
    for (std::size_t i = 0; i < f.d.size() && i < 16; ++i) {
      log << ' ' << int(f.d[i]);
    }
    log << (f.d.size() > 16 ? " ..." : "") << "\n  w =";
    for (std::size_t i = 0; i < f.w.size() && i < 16; ++i) {
      log << ' ' << int(f.w[i]);
    }
    log << (f.w.size() > 16 ? " ..." : "") << '\n';
  }
  log << (r.passed() ? "PASS" : "FAIL") << '\n';
  return r.passed() ? 0 : 1;
}

}  // namespace phasemac::experiments
