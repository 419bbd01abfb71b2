#include <cmath>
#include <cstdio>
#include <sstream>

#include "phasemac/errors.hpp"
#include "phasemac/experiments/commands.hpp"
#include "phasemac/experiments/csv.hpp"

namespace phasemac::experiments {

namespace {

std::string fixed(double v, int digits) {
  if (std::isnan(v)) {
    return "n/a";
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  // Display width, counting UTF-8 continuation bytes as zero.
  std::size_t shown = 0;
  for (unsigned char c : s) {
    shown += (c & 0xC0) != 0x80 ? 1 : 0;
  }
  if (shown < width) {
    s.append(width - shown, ' ');
  }
  return s;
}

struct ReportRow {
  std::string metric;
  double value;
  std::string unit;
  std::string source;  // model, reported, derived
};

std::vector<ReportRow> report_rows(const energy::EnergyParams& p) {
  const auto peak = energy::efficiency_at_activity(0.03, p);
  const auto typical = energy::efficiency_at_activity(0.10, p);
  const auto designs = energy::reported_designs();
  const auto& chip = designs.front();

  std::vector<ReportRow> rows{
      {"model.tops_per_w_at_3pct", peak.tops_per_w, "TOPS/W", "model"},
      {"model.tops_per_w_at_10pct", typical.tops_per_w, "TOPS/W", "model"},
      {"model.power_at_10pct", typical.power_uw, "uW", "model"},
      {"model.vs_dmac_at_10pct", typical.vs_dmac, "x", "model"},
      {"model.vs_dmac_at_3pct", peak.vs_dmac, "x", "model"},
      {"model.crossover_batch", static_cast<double>(energy::crossover_batch(p)), "batch", "model"},
      {"model.dla_power_reduction_batch64", energy::dla_power_reduction(64, 0.10, p), "fraction",
       "model"},
      {"check.tops_per_w_from_power",
       energy::tops_per_w_from_power(chip.power_uw * 1e-6, chip.mac_rate_hz, p.ops_per_mac),
       "TOPS/W", "derived"},
  };
  for (const auto& d : designs) {
    const std::string key = "reported." + std::string(d.name) + " (" + std::string(d.application) + ")";
    rows.push_back({key + ".mac_area", d.mac_area_um2, "um^2", "reported"});
    rows.push_back({key + ".mac_area_per_bit", d.mac_area_per_bit_um2, "um^2/bit", "reported"});
    rows.push_back({key + ".power", d.power_uw, "uW", "reported"});
    rows.push_back({key + ".mac_rate", d.mac_rate_hz, "Hz", "reported"});
    rows.push_back({key + ".tops_per_w", d.tops_per_w, "TOPS/W", "reported"});
    rows.push_back({key + ".tops_per_w_bit", d.tops_per_w_bit, "TOPS/W*bit", "reported"});
  }
  rows.push_back({"reported.batching_area_overhead", energy::kReportedBatchingAreaOverhead,
                  "fraction", "reported"});
  rows.push_back({"reported.area_overhead_vs_dmac", energy::kReportedAreaOverheadVsDmac,
                  "fraction", "reported"});
  rows.push_back({"reported.speed_penalty_vs_dmac", energy::kReportedSpeedPenaltyVsDmac,
                  "fraction", "reported"});
  rows.push_back({"reported.dla_power_reduction", energy::kReportedDlaPowerReduction, "fraction",
                  "reported"});
  return rows;
}

}  // namespace

std::string render_report(const energy::EnergyParams& p) {
  p.validate();
  const auto peak = energy::efficiency_at_activity(0.03, p);
  const auto typical = energy::efficiency_at_activity(0.10, p);
  const auto designs = energy::reported_designs();
  const auto& chip = designs.front();

  std::ostringstream os;
  os << "PMAC behavioral model report\n\n";

  os << "Live model (calibrated energy constants)\n";
  os << "  " << pad("metric", 44) << pad("3% activity", 16) << "10% activity\n";
  os << "  " << pad("efficiency [TOPS/W]", 44) << pad(fixed(peak.tops_per_w, 2), 16)
     << fixed(typical.tops_per_w, 2) << '\n';
  os << "  " << pad("power at " + fixed(p.mac_rate_hz / 1e6, 0) + " MHz [µW]", 44)
     << pad(fixed(peak.power_uw, 1), 16) << fixed(typical.power_uw, 1) << '\n';
  os << "  " << pad("energy per MAC [fJ]", 44) << pad(fixed(peak.energy_per_mac_fj, 2), 16)
     << fixed(typical.energy_per_mac_fj, 2) << '\n';
  os << "  " << pad("inverter transitions per MAC", 44)
     << pad(fixed(peak.transitions_per_op, 2), 16) << fixed(typical.transitions_per_op, 2)
     << '\n';
  os << "  " << pad("advantage over digital MAC [x]", 44) << pad(fixed(peak.vs_dmac, 2), 16)
     << fixed(typical.vs_dmac, 2) << '\n';
  os << "  memory/compute crossover batch: " << energy::crossover_batch(p) << '\n';
  os << "  accelerator power reduction at batch 64: "
     << fixed(100 * energy::dla_power_reduction(64, 0.10, p), 1) << "%\n\n";

  const double check =
      energy::tops_per_w_from_power(chip.power_uw * 1e-6, chip.mac_rate_hz, p.ops_per_mac);
  os << "Arithmetic check\n";
  os << "  " << fixed(chip.power_uw, 0) << " µW at " << fixed(chip.mac_rate_hz / 1e6, 0)
     << " MHz with " << p.ops_per_mac << " ops/MAC = " << fixed(check, 2)
     << " TOPS/W (reported peak: " << fixed(chip.tops_per_w, 0)
     << " TOPS/W; the model places the peak at 3% operand activity)\n\n";

  os << "Reported figures (published constants, not model output)\n";
  os << "  " << pad("design", 34) << pad("domain", 8) << pad("node", 6) << pad("bits", 6)
     << pad("area [µm²]", 12) << pad("µm²/bit", 10) << pad("power [µW]", 12)
     << pad("rate [MHz]", 12) << pad("TOPS/W", 8) << "TOPS/W·bit\n";
  for (const auto& d : designs) {
    os << "  " << pad(std::string(d.name) + ", " + std::string(d.application), 34)
       << pad(std::string(d.domain), 8) << pad(std::string(d.process), 6)
       << pad(std::to_string(d.resolution_bits), 6) << pad(fixed(d.mac_area_um2, 0), 12)
       << pad(fixed(d.mac_area_per_bit_um2, 0), 10) << pad(fixed(d.power_uw, 0), 12)
       << pad(fixed(d.mac_rate_hz / 1e6, 0), 12)
       << pad(format_number(d.tops_per_w), 8) << format_number(d.tops_per_w_bit);
    if (!d.note.empty()) {
      os << "  (" << d.note << ')';
    }
    os << '\n';
  }
  os << "\n  PMAC MAC area: " << fixed(chip.mac_area_um2, 0) << " µm², "
     << fixed(chip.mac_area_per_bit_um2, 0) << " µm²/bit\n";
  os << "  64x batching memory area overhead: "
     << fixed(100 * energy::kReportedBatchingAreaOverhead, 0) << "%\n";
  os << "  area overhead vs digital MAC: ~" << fixed(100 * energy::kReportedAreaOverheadVsDmac, 0)
     << "%, max speed penalty vs digital MAC: ~"
     << fixed(100 * energy::kReportedSpeedPenaltyVsDmac, 0) << "%\n";
  os << "  accelerator power reduction: " << fixed(100 * energy::kReportedDlaPowerReduction, 0)
     << "% (model: " << fixed(100 * energy::dla_power_reduction(64, 0.10, p), 1) << "%)\n";
  return os.str();
}

int cmd_report(const ExperimentConfig& cfg, std::ostream& log) {
  const auto text = render_report(cfg.energy);
  write_file_atomic(cfg.out_dir / "report.txt", text);

  CsvWriter csv("report", {"metric", "value", "unit", "source"});
  for (const auto& row : report_rows(cfg.energy)) {
    csv.cell(row.metric).cell(row.value).cell(row.unit).cell(row.source).end_row();
  }
  write_file_atomic(cfg.out_dir / "report.csv", csv.str());
  log << text;
  return 0;
}

int run_command(const ExperimentConfig& cfg, std::ostream& log) {
  switch (cfg.task) {
    case Task::kOracle:
      return cmd_oracle(cfg, log);
    case Task::kEnergy:
      return cmd_energy(cfg, log);
    case Task::kAnomaly:
      return cmd_anomaly(cfg, log);
    case Task::kMnist:
      return cmd_mnist(cfg, log);
    case Task::kReport:
      return cmd_report(cfg, log);
  }
  throw Error("unknown task");
}

}  // namespace phasemac::experiments
