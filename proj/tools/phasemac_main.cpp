#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "phasemac/errors.hpp"
#include "phasemac/experiments/commands.hpp"
#include "phasemac/experiments/config.hpp"

namespace px = phasemac::experiments;

int main(int argc, char** argv) {
  CLI::App app{"PMAC behavioral simulator: oracle, energy, anomaly, mnist and report experiments"};
  app.set_version_flag("--version", "phasemac 0.1.0");

  std::string command;
  std::optional<std::string> config_file, bits, batch, out, data;
  std::optional<std::uint64_t> seed;
  bool full = false;

  app.add_option("command", command, "oracle | energy | anomaly | mnist | report")
      ->required()
      ->check(CLI::IsMember({"oracle", "energy", "anomaly", "mnist", "report"}));
  app.add_option("--config", config_file, "key=value settings file")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "random seed");
  app.add_option("--bits", bits, "PMAC bit widths, e.g. 8,6,4,2");
  app.add_option("--batch", batch, "batch sizes: list (1,4,64) or power-of-two range (1..128)");
  app.add_option("--out", out, "output directory");
  app.add_option("--data", data, "data root (default $PHASEMAC_DATA or ./data)");
  app.add_flag("--full", full, "mnist: full dataset and 5-layer model");

  CLI11_PARSE(app, argc, argv);

  try {
    auto cfg = px::default_config();
    cfg.task = px::parse_task(command);
    if (config_file) {
      px::apply_config_file(cfg, *config_file);
    }
    if (seed) {
      cfg.seed = *seed;
    }
    if (bits) {
      px::apply_setting(cfg, "bits", *bits);
    }
    if (batch) {
      px::apply_setting(cfg, "batch", *batch);
    }
    if (out) {
      cfg.out_dir = *out;
    }
    if (data) {
      cfg.data_root = *data;
    }
    if (full) {
      cfg.full = true;
    }
    return px::run_command(cfg, std::cout);
  } catch (const phasemac::SaturationError& e) {
    std::cerr << "error: " << e.what() << " (reduce layer width or raise counter_bits)\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return 2;
}
