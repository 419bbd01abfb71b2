#include "phasemac/energy_model.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include "phasemac/errors.hpp"
#include "phasemac/key_value.hpp"

namespace phasemac::energy {

namespace {

constexpr double kFemto = 1e15;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

void EnergyParams::validate() const {
  const double energies[] = {e_inv_fj, e_fixed_fj, e_dmac_fj, e_weight_read_fj, e_const_mem_fj};
  for (double e : energies) {
    if (!(e >= 0) || !std::isfinite(e)) {
      throw std::invalid_argument("energy parameters must be finite and non-negative");
    }
  }
  if (!(mac_rate_hz > 0)) {
    throw std::invalid_argument("mac_rate must be positive");
  }
  if (ops_per_mac != 1 && ops_per_mac != 2) {
    throw std::invalid_argument("ops_per_mac must be 1 or 2");
  }
  if (macs_per_inference == 0) {
    throw std::invalid_argument("macs_per_inference must be positive");
  }
}

double pmac_energy_fj(const EnergyLedger& ledger, const EnergyParams& p) {
  return static_cast<double>(ledger.inverter_transitions) * p.e_inv_fj +
         static_cast<double>(ledger.mac_ops) * p.e_fixed_fj;
}

double dmac_energy_fj(std::uint64_t n_ops, const EnergyParams& p) {
  return static_cast<double>(n_ops) * p.e_dmac_fj;
}

double memory_compute_ratio(std::uint64_t batch, const EnergyParams& p) {
  if (batch == 0) {
    throw std::invalid_argument("batch must be >= 1");
  }
  const auto w = static_cast<double>(p.macs_per_inference);
  const double e_weights = w * p.e_weight_read_fj;
  const double e_mac = w * p.e_dmac_fj;
  return (e_weights / static_cast<double>(batch) + p.e_const_mem_fj) / e_mac;
}

std::uint64_t crossover_batch(const EnergyParams& p, std::uint64_t max_batch) {
  for (std::uint64_t b = 1; b <= max_batch; ++b) {
    if (memory_compute_ratio(b, p) < 1.0) {
      return b;
    }
  }
  return 0;
}

double expected_transitions_per_mac(double d_activity, double w_activity) {
  return (127.0 * d_activity) * ((kMaxMsbField + kMaxLsbField) * w_activity);
}

EnergyLedger activity_ledger(double activity, std::uint64_t n_macs) {
  if (!(activity >= 0.0 && activity <= 1.0)) {
    throw std::invalid_argument("activity must be in [0, 1]");
  }
  EnergyLedger ledger;
  ledger.mac_ops = n_macs;
  ledger.inverter_transitions = static_cast<std::uint64_t>(
      std::llround(expected_transitions_per_mac(activity) * static_cast<double>(n_macs)));
  return ledger;
}

Calibration calibrate(const CalibrationAnchors& a) {
  Calibration cal;
  cal.anchors = a;
  auto& p = cal.params;
  p.mac_rate_hz = a.mac_rate_hz;
  p.ops_per_mac = a.ops_per_mac;
  p.macs_per_inference = a.macs_per_inference;

  // PMAC per-MAC energy is linear in transitions: E(a) = e_fixed + e_inv*t(a).
  // Two points pin it: measured power at the typical activity, and the peak
  // efficiency at the low-activity end.
  const double e_typical = a.measured_power_w / a.mac_rate_hz * kFemto;
  const double e_peak = a.ops_per_mac / (a.peak_tops_per_w * 1e12) * kFemto;
  const double t_typical = expected_transitions_per_mac(a.typical_activity);
  const double t_peak = expected_transitions_per_mac(a.peak_activity);
  if (t_typical == t_peak) {
    throw Error("infeasible calibration: typical and peak activity coincide");
  }
  p.e_inv_fj = (e_typical - e_peak) / (t_typical - t_peak);
  p.e_fixed_fj = e_peak - p.e_inv_fj * t_peak;
  if (p.e_inv_fj < 0 || p.e_fixed_fj < 0) {
    throw Error("infeasible calibration: anchors imply negative per-event energy");
  }

  p.e_dmac_fj = a.dmac_advantage * e_typical;

  // ratio(b) = r/b + c, with r = e_weight_read/e_dmac and
  // c = e_const_mem/(W*e_dmac); two anchors give a 2x2 linear system.
  const double inv_small = 1.0 / static_cast<double>(a.small_batch);
  const double inv_large = 1.0 / static_cast<double>(a.large_batch);
  const double r = (a.ratio_at_small_batch - a.ratio_at_large_batch) / (inv_small - inv_large);
  const double c = a.ratio_at_small_batch - r * inv_small;
  if (!(r > 0) || c < 0) {
    throw Error("infeasible calibration: memory ratio anchors must decrease with batch");
  }
  p.e_weight_read_fj = r * p.e_dmac_fj;
  p.e_const_mem_fj = c * static_cast<double>(a.macs_per_inference) * p.e_dmac_fj;
  p.validate();

  cal.solved = {
      {"pmac_energy_per_mac_typical", e_typical, "fJ",
       "measured_power / mac_rate = " + fmt(a.measured_power_w) + " W / " + fmt(a.mac_rate_hz) +
           " Hz"},
      {"pmac_energy_per_mac_peak", e_peak, "fJ",
       "ops_per_mac / peak_tops_per_w = " + std::to_string(a.ops_per_mac) + " / " +
           fmt(a.peak_tops_per_w) + "e12"},
      {"transitions_per_mac_typical", t_typical, "transitions",
       "127*a*(7+15)*a at a=" + fmt(a.typical_activity)},
      {"transitions_per_mac_peak", t_peak, "transitions",
       "127*a*(7+15)*a at a=" + fmt(a.peak_activity)},
      {"e_inv", p.e_inv_fj, "fJ", "(E_typical - E_peak) / (t_typical - t_peak)"},
      {"e_fixed", p.e_fixed_fj, "fJ", "E_peak - e_inv * t_peak"},
      {"e_dmac", p.e_dmac_fj, "fJ", fmt(a.dmac_advantage) + " * E_typical"},
      {"weight_to_mac_ratio", r, "1",
       "(R_small - R_large) / (1/b_small - 1/b_large) with R=" + fmt(a.ratio_at_small_batch) +
           "@" + std::to_string(a.small_batch) + ", " + fmt(a.ratio_at_large_batch) + "@" +
           std::to_string(a.large_batch)},
      {"const_mem_to_mac_ratio", c, "1", "R_small - r / b_small"},
      {"e_weight_read", p.e_weight_read_fj, "fJ", "weight_to_mac_ratio * e_dmac"},
      {"e_const_mem", p.e_const_mem_fj, "fJ",
       "const_mem_to_mac_ratio * macs_per_inference * e_dmac"},
  };
  return cal;
}

EnergyParams calibrate_defaults() { return calibrate().params; }

EfficiencyReport efficiency_report(const EnergyLedger& ledger, std::uint64_t elapsed_macs,
                                   const EnergyParams& p) {
  if (elapsed_macs == 0) {
    throw std::invalid_argument("efficiency_report needs at least one MAC");
  }
  const auto n = static_cast<double>(elapsed_macs);
  EfficiencyReport r;
  r.energy_per_mac_fj = pmac_energy_fj(ledger, p) / n;
  r.tops_per_w = p.ops_per_mac / (r.energy_per_mac_fj / kFemto) / 1e12;
  r.power_uw = r.energy_per_mac_fj / kFemto * p.mac_rate_hz * 1e6;
  r.transitions_per_op = static_cast<double>(ledger.inverter_transitions) / n;
  r.dmac_energy_per_mac_fj = dmac_energy_fj(elapsed_macs, p) / n;
  r.vs_dmac = r.dmac_energy_per_mac_fj / r.energy_per_mac_fj;
  return r;
}

EfficiencyReport efficiency_at_activity(double activity, const EnergyParams& p) {
  constexpr std::uint64_t kMacs = 1'000'000;
  return efficiency_report(activity_ledger(activity, kMacs), kMacs, p);
}

std::vector<BatchRatio> batch_ratio_sweep(std::span<const std::uint64_t> batches,
                                          const EnergyParams& p) {
  if (batches.empty()) {
    throw std::invalid_argument("batch sweep needs at least one batch size");
  }
  std::vector<BatchRatio> rows;
  rows.reserve(batches.size());
  for (auto b : batches) {
    rows.push_back({b, memory_compute_ratio(b, p)});
  }
  return rows;
}

double dla_power_reduction(std::uint64_t batch, double activity, const EnergyParams& p) {
  const double ratio = memory_compute_ratio(batch, p);
  const double pmac_fraction = 1.0 / efficiency_at_activity(activity, p).vs_dmac;
  return 1.0 - (ratio + pmac_fraction) / (ratio + 1.0);
}

bool apply_param(EnergyParams& p, std::string_view key, std::string_view value) {
  if (key == "e_inv") {
    p.e_inv_fj = parse_double(value, key);
  } else if (key == "e_fixed") {
    p.e_fixed_fj = parse_double(value, key);
  } else if (key == "e_dmac") {
    p.e_dmac_fj = parse_double(value, key);
  } else if (key == "e_weight_read") {
    p.e_weight_read_fj = parse_double(value, key);
  } else if (key == "e_const_mem") {
    p.e_const_mem_fj = parse_double(value, key);
  } else if (key == "mac_rate") {
    p.mac_rate_hz = parse_double(value, key);
  } else if (key == "ops_per_mac") {
    p.ops_per_mac = static_cast<int>(parse_int(value, key));
  } else if (key == "macs_per_inference") {
    const auto v = parse_int(value, key);
    if (v <= 0) {
      throw std::invalid_argument("macs_per_inference must be positive");
    }
    p.macs_per_inference = static_cast<std::uint64_t>(v);
  } else {
    return false;
  }
  return true;
}

EnergyParams load_params(std::istream& in) {
  EnergyParams p = calibrate_defaults();
  for (const auto& kv : parse_key_values(in)) {
    if (!apply_param(p, kv.key, kv.value)) {
      throw FormatError("unknown energy parameter '" + kv.key + "'", kv.line);
    }
  }
  p.validate();
  return p;
}

EnergyParams load_params(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open energy parameter file " + path.string());
  }
  return load_params(in);
}

std::span<const ReportedDesign> reported_designs() {
  static const std::array<ReportedDesign, 4> kDesigns{{
      {"PMAC chip", "phase", "28nm", 8, 1200, 150, "MNIST", 152, 780e6, 14, 112, ""},
      {"PMAC chip", "phase", "28nm", 8, 1200, 150, "anomaly detection", 170, 700e6, 11.6, 92.8,
       ""},
      {"time-domain MAC", "time", "65nm", 1, 13000, 13000, "MNIST", kNaN, kNaN, 77, 77,
       "area assumes 256 MAC ops"},
      {"switched-capacitor MAC", "charge", "40nm", 3, 12000, 4000, "CIFAR10", 228, 1e9, 8.77,
       26.3, "power includes memory"},
  }};
  return kDesigns;
}

double tops_per_w_from_power(double power_w, double mac_rate_hz, int ops_per_mac) {
  return ops_per_mac * mac_rate_hz / power_w / 1e12;
}

}  // namespace phasemac::energy
