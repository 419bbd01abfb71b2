#include <sstream>

#include "phasemac/experiments/commands.hpp"
#include "phasemac/experiments/csv.hpp"

namespace phasemac::experiments {

namespace {

std::string activity_tag(double a) {
  std::ostringstream os;
  os << "activity_" << format_number(a * 100) << "pct";
  return os.str();
}

constexpr const char* kBatchRatioScript = R"(# phasemac gnuplot script v1
set datafile separator ','
set logscale x 2
set xlabel 'batch size'
set ylabel 'E_memory / E_MAC'
set grid
set key off
set terminal pngcairo size 800,500
set output 'batch_ratio.png'
plot 'batch_ratio.csv' every ::2 using 1:2 with linespoints lw 2, 1 with lines dt 2
)";

}  // namespace

int cmd_energy(const ExperimentConfig& cfg, std::ostream& log) {
  const auto& p = cfg.energy;
  p.validate();

  CsvWriter sweep("batch_ratio", {"batch", "ratio"});
  for (const auto& row : energy::batch_ratio_sweep(cfg.batches, p)) {
    sweep.cell(row.batch).cell(row.ratio).end_row();
  }
  write_file_atomic(cfg.out_dir / "batch_ratio.csv", sweep.str());
  write_file_atomic(cfg.out_dir / "batch_ratio.gp", kBatchRatioScript);

  CsvWriter eff("efficiency", {"metric", "value", "unit"});
  for (double a : cfg.activities) {
    const auto r = energy::efficiency_at_activity(a, p);
    const auto tag = activity_tag(a);
    eff.cell(tag + ".energy_per_mac").cell(r.energy_per_mac_fj).cell("fJ").end_row();
    eff.cell(tag + ".tops_per_w").cell(r.tops_per_w).cell("TOPS/W").end_row();
    eff.cell(tag + ".power_at_mac_rate").cell(r.power_uw).cell("uW").end_row();
    eff.cell(tag + ".transitions_per_op").cell(r.transitions_per_op).cell("transitions").end_row();
    eff.cell(tag + ".dmac_energy_per_mac").cell(r.dmac_energy_per_mac_fj).cell("fJ").end_row();
    eff.cell(tag + ".vs_dmac").cell(r.vs_dmac).cell("x").end_row();
    log << tag << ": " << format_number(r.tops_per_w) << " TOPS/W, "
        << format_number(r.power_uw) << " uW, " << format_number(r.vs_dmac) << "x vs DMAC\n";
  }
  eff.cell("crossover_batch").cell(energy::crossover_batch(p)).cell("batch").end_row();
  eff.cell("dla_power_reduction_batch64")
      .cell(energy::dla_power_reduction(64, 0.10, p))
      .cell("fraction")
      .end_row();
  write_file_atomic(cfg.out_dir / "efficiency.csv", eff.str());

  CsvWriter params("energy_params", {"metric", "value", "unit"});
  params.cell("e_inv").cell(p.e_inv_fj).cell("fJ").end_row();
  params.cell("e_fixed").cell(p.e_fixed_fj).cell("fJ").end_row();
  params.cell("e_dmac").cell(p.e_dmac_fj).cell("fJ").end_row();
  params.cell("e_weight_read").cell(p.e_weight_read_fj).cell("fJ").end_row();
  params.cell("e_const_mem").cell(p.e_const_mem_fj).cell("fJ").end_row();
  params.cell("mac_rate").cell(p.mac_rate_hz).cell("Hz").end_row();
  params.cell("ops_per_mac").cell(p.ops_per_mac).cell("ops").end_row();
  params.cell("macs_per_inference").cell(p.macs_per_inference).cell("MACs").end_row();
  write_file_atomic(cfg.out_dir / "energy_params.csv", params.str());

  const auto cal = energy::calibrate();
  CsvWriter solved("calibration", {"metric", "value", "unit"});
  for (const auto& s : cal.solved) {
    solved.cell(s.name).cell(s.value).cell(s.unit).end_row();
  }
  write_file_atomic(cfg.out_dir / "calibration.csv", solved.str());

  log << "memory/compute ratio: batch 1 -> " << format_number(energy::memory_compute_ratio(1, p))
      << ", batch 64 -> " << format_number(energy::memory_compute_ratio(64, p))
      << ", crossover at batch " << energy::crossover_batch(p) << '\n';
  return 0;
}

}  // namespace phasemac::experiments
