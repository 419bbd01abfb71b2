#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "phasemac/pmac_array.hpp"

namespace phasemac::energy {

/// Per-event energy constants (femtojoules) and timing.
struct EnergyParams {
  double e_inv_fj = 0;          // one inverter transition
  double e_fixed_fj = 0;        // per MAC: DTC pulse plus amortized readout
  double e_dmac_fj = 0;         // one 8-bit digital MAC (baseline)
  double e_weight_read_fj = 0;  // one weight fetched from memory
  double e_const_mem_fj = 0;    // non-weight memory energy per inference
  double mac_rate_hz = 780e6;
  int ops_per_mac = 2;
  std::uint64_t macs_per_inference = 237568;  // 400-256-64-256-400 autoencoder

  /// Throws std::invalid_argument on negative energies, non-positive rate,
  /// ops_per_mac outside {1,2}, or zero macs_per_inference.
  void validate() const;
};

/// Compute energy of the PMAC datapath for the events in `ledger`.
double pmac_energy_fj(const EnergyLedger& ledger, const EnergyParams& p);

/// Activity-independent digital MAC baseline.
double dmac_energy_fj(std::uint64_t n_ops, const EnergyParams& p);

/// Memory-to-compute energy ratio per inference at the given batch size,
/// compute being the digital MAC baseline:
///   (W*e_weight_read/batch + e_const_mem) / (W*e_dmac),  W = macs_per_inference.
double memory_compute_ratio(std::uint64_t batch, const EnergyParams& p);

/// Smallest batch whose memory/compute ratio drops below 1. Returns 0 if none
/// up to `max_batch`.
std::uint64_t crossover_batch(const EnergyParams& p, std::uint64_t max_batch = 1U << 20);

/// Expected inverter transitions per MAC when the DTC code sits at fraction
/// `d_activity` of full scale and each weight field at `w_activity` of its own
/// full scale: (127 a_d) * (7 a_w + 15 a_w).
double expected_transitions_per_mac(double d_activity, double w_activity);
inline double expected_transitions_per_mac(double activity) {
  return expected_transitions_per_mac(activity, activity);
}

/// Ledger of `n_macs` operations at the given mean operand activity
/// (transitions rounded to the nearest integer).
EnergyLedger activity_ledger(double activity, std::uint64_t n_macs);

struct CalibrationAnchors {
  double ratio_at_small_batch = 10.0;
  std::uint64_t small_batch = 1;
  double ratio_at_large_batch = 1.0 / 3.0;
  std::uint64_t large_batch = 64;
  double dmac_advantage = 8.0;       // PMAC vs DMAC energy at typical_activity
  double typical_activity = 0.10;    // also where measured power applies
  double peak_tops_per_w = 14.0;     // reached at peak_activity
  double peak_activity = 0.03;
  double measured_power_w = 152e-6;  // at mac_rate_hz and typical_activity
  double mac_rate_hz = 780e6;
  int ops_per_mac = 2;
  std::uint64_t macs_per_inference = 237568;
};

struct SolvedValue {
  std::string name;
  double value;
  std::string unit;
  std::string derivation;
};

struct Calibration {
  EnergyParams params;
  CalibrationAnchors anchors;
  std::vector<SolvedValue> solved;
};

/// Closed-form solve of the energy constants from the anchors. Throws Error
/// if the anchors imply a negative energy or a non-decreasing memory ratio.
Calibration calibrate(const CalibrationAnchors& anchors = {});
EnergyParams calibrate_defaults();

struct EfficiencyReport {
  double energy_per_mac_fj = 0;
  double tops_per_w = 0;
  double power_uw = 0;  // at mac_rate_hz
  double transitions_per_op = 0;
  double dmac_energy_per_mac_fj = 0;
  double vs_dmac = 0;  // DMAC energy / PMAC energy
};

/// Throws std::invalid_argument when elapsed_macs is zero.
EfficiencyReport efficiency_report(const EnergyLedger& ledger, std::uint64_t elapsed_macs,
                                   const EnergyParams& p);

EfficiencyReport efficiency_at_activity(double activity, const EnergyParams& p);

struct BatchRatio {
  std::uint64_t batch;
  double ratio;
};

std::vector<BatchRatio> batch_ratio_sweep(std::span<const std::uint64_t> batches,
                                          const EnergyParams& p);

/// Fraction of accelerator energy (memory + compute) saved by replacing the
/// digital MAC with the PMAC at `activity`, for the given batch size.
double dla_power_reduction(std::uint64_t batch, double activity, const EnergyParams& p);

/// Sets one parameter by name (e_inv, e_fixed, e_dmac, e_weight_read,
/// e_const_mem, mac_rate, ops_per_mac, macs_per_inference). Returns false for
/// an unknown key.
bool apply_param(EnergyParams& p, std::string_view key, std::string_view value);

/// Reads key=value overrides on top of the calibrated defaults.
EnergyParams load_params(const std::filesystem::path& path);
EnergyParams load_params(std::istream& in);

/// Figures published for the fabricated chip and the analog MACs it was
/// compared against. Reported constants, not model output.
struct ReportedDesign {
  std::string_view name;
  std::string_view domain;
  std::string_view process;
  int resolution_bits;
  double mac_area_um2;
  double mac_area_per_bit_um2;
  std::string_view application;
  double power_uw;   // NaN when not reported
  double mac_rate_hz;  // NaN when not reported
  double tops_per_w;
  double tops_per_w_bit;
  std::string_view note;
};

std::span<const ReportedDesign> reported_designs();

inline constexpr double kReportedBatchingAreaOverhead = 0.05;
inline constexpr double kReportedAreaOverheadVsDmac = 0.20;
inline constexpr double kReportedSpeedPenaltyVsDmac = 0.20;
inline constexpr double kReportedDlaPowerReduction = 0.66;

/// ops_per_mac * mac_rate / power, in TOPS/W.
double tops_per_w_from_power(double power_w, double mac_rate_hz, int ops_per_mac);

}  // namespace phasemac::energy
