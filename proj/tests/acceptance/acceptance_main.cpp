// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only if
// every criterion passes. MNIST data is read from $PHASEMAC_DATA/mnist (or
// ./data/mnist); see scripts/fetch_mnist_subset.sh.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "phasemac/energy_model.hpp"
#include "phasemac/errors.hpp"
#include "phasemac/experiments/commands.hpp"
#include "phasemac/experiments/csv.hpp"
#include "phasemac/gro.hpp"
#include "phasemac/pmac_array.hpp"
#include "phasemac/pmac_unit.hpp"

namespace fs = std::filesystem;
namespace px = phasemac::experiments;
namespace energy = phasemac::energy;
using phasemac::GroState;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double v) { return px::format_number(v); }

fs::path scratch_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("phasemac_acceptance_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Verdict oracle_equivalence() {
  const auto t0 = Clock::now();
  px::OracleSettings s;  // 10^6 trials
  const auto r = px::run_oracle(s, 1);
  const double t = seconds_since(t0);
  return {r.passed() && r.trials >= 1'000'000 && t < 60.0,
          std::to_string(r.trials) + " random dot products, " + std::to_string(r.mismatches) +
              " mismatches, " + num(t) + " s (limit 60 s)"};
}

Verdict gro_trace() {
  phasemac::PmacUnit unit;
  unit.mac(3, 1);
  const auto& g = unit.gro(phasemac::GroId::kPosLsb);
  const bool first = g.phase_index() == 3 && g.wrap_counter() == 0 &&
                     g.phase_radians() == 0.6 * std::numbers::pi;
  GroState after = g;
  after.advance(7);
  const bool second = after.wrap_counter() == 1 && after.phase_index() == 0;
  return {first && second, "d=3,w=1 -> phase " + std::to_string(g.phase_index()) + " (" +
                               num(g.phase_radians() / std::numbers::pi) + " pi), counter " +
                               std::to_string(g.wrap_counter()) + "; +7 -> counter " +
                               std::to_string(after.wrap_counter()) + ", phase " +
                               std::to_string(after.phase_index())};
}

Verdict phase_code_bijection() {
  int valid = 0, rejected = 0;
  bool roundtrip = true;
  for (unsigned m = 0; m < 32; ++m) {
    phasemac::PhaseCode c;
    for (int i = 0; i < 5; ++i) c.bits.push_back(static_cast<std::uint8_t>((m >> i) & 1));
    try {
      const int p = phasemac::decode_phase(c, 5);
      roundtrip = roundtrip && phasemac::encode_phase(p, 5) == c;
      ++valid;
    } catch (const phasemac::InvalidPhaseCode&) {
      ++rejected;
    }
  }
  for (int p = 0; p < 10; ++p) {
    roundtrip = roundtrip && phasemac::decode_phase(phasemac::encode_phase(p, 5), 5) == p;
  }
  return {valid == 10 && rejected == 22 && roundtrip,
          std::to_string(valid) + " valid codes, " + std::to_string(rejected) + " rejected"};
}

Verdict batch_anchors() {
  const auto p = energy::calibrate_defaults();
  const double r1 = energy::memory_compute_ratio(1, p);
  const double r64 = energy::memory_compute_ratio(64, p);
  bool decreasing = true;
  for (std::uint64_t b = 2; b <= 128; ++b) {
    decreasing = decreasing &&
                 energy::memory_compute_ratio(b, p) < energy::memory_compute_ratio(b - 1, p);
  }
  const auto cross = energy::crossover_batch(p);
  return {std::fabs(r1 - 10.0) < 1e-9 && std::fabs(r64 - 1.0 / 3.0) < 1e-9 && decreasing &&
              cross == 12,
          "ratio(1)=" + num(r1) + ", ratio(64)=" + num(r64) + ", strictly decreasing on 1..128: " +
              (decreasing ? "yes" : "no") + ", crossover batch " + std::to_string(cross)};
}

Verdict dmac_comparison() {
  const auto p = energy::calibrate_defaults();
  const auto typ = energy::efficiency_at_activity(0.10, p);
  const auto low = energy::efficiency_at_activity(0.03, p);
  const auto full = energy::efficiency_at_activity(1.0, p);
  const bool invariant = typ.dmac_energy_per_mac_fj == low.dmac_energy_per_mac_fj &&
                         typ.dmac_energy_per_mac_fj == full.dmac_energy_per_mac_fj;
  return {std::fabs(typ.vs_dmac - 8.0) < 1e-6 && low.vs_dmac > 8.0 && invariant,
          "vs DMAC " + num(typ.vs_dmac) + "x at 10%, " + num(low.vs_dmac) +
              "x at 3%, DMAC energy activity-invariant: " + (invariant ? "yes" : "no")};
}

Verdict report_check() {
  auto cfg = px::default_config();
  cfg.out_dir = scratch_dir("report");
  std::ostringstream log;
  px::cmd_report(cfg, log);
  const auto text = slurp(cfg.out_dir / "report.txt");
  std::vector<std::string> missing;
  for (const char* s : {"14 TOPS/W", "152 µW", "780 MHz", "1200 µm²", "10.26 TOPS/W",
                        "Arithmetic check", "Reported figures (published constants"}) {
    if (text.find(s) == std::string::npos) missing.push_back(s);
  }
  std::string detail = "report.txt carries the published figures and the 10.26 TOPS/W check";
  if (!missing.empty()) {
    detail = "missing:";
    for (const auto& m : missing) detail += " '" + m + "'";
  }
  return {missing.empty(), detail};
}

Verdict anomaly_sweep() {
  const auto t0 = Clock::now();
  const std::vector<int> bits{8, 6, 4, 2};
  const int seeds = 5;
  std::map<int, double> corr, auc;
  for (int seed = 1; seed <= seeds; ++seed) {
    const auto r = px::run_anomaly(px::AnomalySettings{}, bits, static_cast<std::uint64_t>(seed));
    for (const auto& res : r.resolutions) {
      corr[res.bits] += res.correlation_with_float / seeds;
      auc[res.bits] += res.auc / seeds;
    }
  }
  const double t = seconds_since(t0);
  const bool monotone = corr[8] >= corr[6] && corr[6] >= corr[4] && corr[4] >= corr[2];
  const bool pass = corr[8] >= 0.95 && monotone && auc[2] <= auc[0] - 0.10 && t < 600;
  return {pass, "mean corr 8/6/4/2b = " + num(corr[8]) + "/" + num(corr[6]) + "/" + num(corr[4]) +
                    "/" + num(corr[2]) + ", AUC float " + num(auc[0]) + " vs 2b " + num(auc[2]) +
                    ", " + std::to_string(seeds) + " seeds, " + num(t) + " s (limit 600 s)"};
}

Verdict mnist_subset() {
  const auto cfg = px::default_config();
  const auto dir = cfg.mnist_dir();
  if (!fs::exists(dir / "train-images-idx3-ubyte") || !fs::exists(dir / "t10k-images-idx3-ubyte")) {
    return {false, "MNIST IDX files not found under " + dir.string() +
                       " (run scripts/fetch_mnist_subset.sh or set PHASEMAC_DATA)"};
  }
  const auto t0 = Clock::now();
  double fl = 0, pm = 0;
  std::size_t train = 0, test = 0;
  for (int seed = 1; seed <= 3; ++seed) {
    const auto r = px::run_mnist(cfg.mnist, dir, static_cast<std::uint64_t>(seed), false);
    fl += r.float_accuracy / 3;
    pm += r.pmac_accuracy / 3;
    train = r.train_samples;
    test = r.test_samples;
  }
  const double t = seconds_since(t0);
  const double gap = 100 * std::fabs(fl - pm);
  return {fl >= 0.90 && gap <= 1.5 && t < 600 && train == 8000 && test == 1000,
          std::to_string(train) + "/" + std::to_string(test) + " subset, mean float " +
              num(100 * fl) + "%, 8b PMAC " + num(100 * pm) + "%, gap " + num(gap) +
              " points, " + num(t) + " s (limit 600 s)"};
}

Verdict saturation_contract() {
  const auto max_safe = phasemac::max_safe_dot_length(20, 5);
  bool edge_ok = true;
  for (int sign : {1, -1}) {
    phasemac::PmacUnit u;
    try {
      for (std::uint64_t i = 0; i < max_safe; ++i) u.mac(127, static_cast<std::int8_t>(sign * 127));
      edge_ok = edge_ok && u.readout().value == sign * static_cast<std::int64_t>(max_safe) * 127 * 127;
    } catch (const phasemac::SaturationError&) {
      edge_ok = false;
    }
  }
  bool named = true;
  std::string last;
  for (std::uint64_t k : {1, 2, 10}) {
    for (int sign : {1, -1}) {
      phasemac::PmacUnit u;
      const std::string expected = sign > 0 ? "pos_lsb" : "neg_lsb";
      try {
        for (std::uint64_t i = 0; i < max_safe + k; ++i) {
          u.mac(127, static_cast<std::int8_t>(sign * 127));
        }
        named = false;
      } catch (const phasemac::SaturationError& e) {
        named = named && e.gro() == expected &&
                std::string(e.what()).find(expected) != std::string::npos;
        last = e.what();
      }
    }
  }
  return {edge_ok && named, "length " + std::to_string(max_safe) + " succeeds: " +
                                (edge_ok ? "yes" : "no") + "; beyond it: \"" + last + "\""};
}

Verdict determinism() {
  const std::vector<px::Task> tasks{px::Task::kOracle, px::Task::kEnergy, px::Task::kReport,
                                    px::Task::kAnomaly, px::Task::kMnist};
  std::vector<std::string> differing;
  std::size_t compared = 0;
  for (auto task : tasks) {
    auto cfg = px::default_config();
    cfg.task = task;
    cfg.seed = 7;
    std::ostringstream log;
    const auto a = scratch_dir(std::string(px::to_string(task)) + "_a");
    const auto b = scratch_dir(std::string(px::to_string(task)) + "_b");
    try {
      cfg.out_dir = a;
      px::run_command(cfg, log);
      cfg.out_dir = b;
      px::run_command(cfg, log);
    } catch (const std::exception& e) {
      differing.push_back(std::string(px::to_string(task)) + " (" + e.what() + ")");
      continue;
    }
    for (const auto& entry : fs::directory_iterator(a)) {
      if (entry.path().extension() != ".csv") continue;
      ++compared;
      if (slurp(entry.path()) != slurp(b / entry.path().filename())) {
        differing.push_back(entry.path().filename().string());
      }
    }
  }
  std::string detail = std::to_string(compared) + " CSV files byte-identical across re-runs";
  if (!differing.empty()) {
    detail = "differs or failed:";
    for (const auto& d : differing) detail += " " + d;
  }
  return {differing.empty() && compared > 0, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"exact-equivalence oracle", oracle_equivalence},
      {"GRO phase trace", gro_trace},
      {"phase-code bijection", phase_code_bijection},
      {"batch-size memory/compute anchors", batch_anchors},
      {"PMAC vs DMAC efficiency", dmac_comparison},
      {"reported-figure arithmetic check", report_check},
      {"anomaly resolution sweep", anomaly_sweep},
      {"MNIST desk-scale subset", mnist_subset},
      {"saturation contract", saturation_contract},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += v.pass ? 0 : 1;
    std::printf("%s %2zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
