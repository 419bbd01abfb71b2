#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "phasemac/anomaly.hpp"
#include "phasemac/errors.hpp"
#include "phasemac/experiments/commands.hpp"
#include "phasemac/experiments/csv.hpp"
#include "phasemac/experiments/synthetic.hpp"
#include "phasemac/inference.hpp"
#include "phasemac/model_io.hpp"
#include "phasemac/trainer.hpp"
#include "phasemac/window_csv.hpp"

namespace phasemac::experiments {

namespace {

// Independent sub-seeds for the different random streams of one run.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed * 0x9E3779B97F4A7C15ULL + stream * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

enum Stream : std::uint64_t { kRecording = 1, kInit, kShuffle };

SyntheticConfig series_config(const AnomalySettings& s, std::size_t n, std::uint64_t seed) {
  SyntheticConfig c;
  c.n = n;
  c.base_freqs = s.base_freqs;
  c.amplitudes = s.amplitudes;
  c.noise_sigma = s.noise_sigma;
  c.freq_shift = s.freq_shift;
  c.amp_shift = s.amp_shift;
  c.seed = seed;
  return c;
}

std::vector<std::vector<float>> cut_windows(const std::vector<float>& series,
                                            std::span<const std::size_t> starts,
                                            std::size_t length, float scale) {
  std::vector<std::vector<float>> out;
  out.reserve(starts.size());
  for (auto s : starts) {
    std::vector<float> w(series.begin() + static_cast<std::ptrdiff_t>(s),
                         series.begin() + static_cast<std::ptrdiff_t>(s + length));
    for (auto& v : w) {
      v *= scale;
    }
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<double> score_all(nn::Inference& engine,
                              const std::vector<std::vector<float>>& windows) {
  std::vector<double> scores;
  scores.reserve(windows.size());
  for (const auto& w : windows) {
    scores.push_back(nn::anomaly_score(engine, w));
  }
  return scores;
}

std::string resolution_label(int bits) { return bits == 0 ? "float" : std::to_string(bits) + "b"; }

}  // namespace

AnomalyResult run_anomaly(const AnomalySettings& s, std::span<const int> bits,
                          std::uint64_t seed) {
  const std::size_t h = s.horizon;
  const std::size_t window = 2 * h;
  AnomalyResult result;

  // One continuous recording: training segment, validation segment, then the
  // evaluation segment carrying the anomalies.
  const std::size_t val_begin = s.train_samples;
  const std::size_t eval_begin = val_begin + s.validation_samples;
  auto rec_cfg = series_config(s, eval_begin + s.eval_samples, derive_seed(seed, kRecording));
  rec_cfg.spans = place_spans(s.eval_samples, s.anomaly_spans, s.span_length);
  for (auto& span : rec_cfg.spans) {
    span.start += eval_begin;
    span.end += eval_begin;
  }
  const auto recording = gen_synthetic(rec_cfg);
  const auto segment = [&](std::size_t begin, std::size_t n) {
    return std::vector<float>(recording.samples.begin() + static_cast<std::ptrdiff_t>(begin),
                              recording.samples.begin() + static_cast<std::ptrdiff_t>(begin + n));
  };
  const auto train = segment(0, s.train_samples);
  float peak = 0.0f;
  for (float v : train) {
    peak = std::max(peak, std::fabs(v));
  }
  const float scale = peak > 0.0f ? 1.0f / peak : 1.0f;

  if (!s.model_in.empty()) {
    result.model = nn::load_model(s.model_in);
    if (result.model.input_dim() != h || result.model.output_dim() != h) {
      throw DimensionMismatch("model " + s.model_in.string() + " does not map " +
                              std::to_string(h) + " samples to " + std::to_string(h));
    }
  } else {
    nn::Dataset data(h, h);
    for (const auto& w :
         cut_windows(train, window_starts(train.size(), window, s.train_stride),
                     window, scale)) {
      data.add(std::span(w).first(h), std::span(w).subspan(h));
    }
    std::vector<std::size_t> dims{h};
    dims.insert(dims.end(), s.hidden.begin(), s.hidden.end());
    dims.push_back(h);
    auto model = nn::FcModel::random(dims, derive_seed(seed, kInit));
    nn::SgdParams sgd;
    sgd.learning_rate = s.learning_rate;
    sgd.epochs = s.epochs;
    sgd.batch_size = s.batch_size;
    sgd.seed = derive_seed(seed, kShuffle);
    result.model = nn::train_sgd(std::move(model), data, sgd, &result.epoch_losses);
  }
  if (!s.model_out.empty()) {
    nn::save_model(result.model, s.model_out);
  }

  const auto validation = segment(val_begin, s.validation_samples);
  const auto validation_windows =
      cut_windows(validation, window_starts(validation.size(), window, s.eval_stride), window, scale);

  std::vector<std::vector<float>> eval_windows;
  if (!s.windows_in.empty()) {
    eval_windows = nn::read_windows_csv(s.windows_in);
    for (auto& w : eval_windows) {
      for (auto& v : w) {
        v *= scale;
      }
    }
    result.window_starts.resize(eval_windows.size());
    result.labels.assign(eval_windows.size(), 0);
  } else {
    const auto eval = segment(eval_begin, s.eval_samples);
    result.window_starts = window_starts(eval.size(), window, s.eval_stride);
    for (auto start : result.window_starts) {
      result.labels.push_back(
          overlaps_anomaly(recording.anomaly_spans, eval_begin + start, window) ? 1 : 0);
    }
    if (!s.windows_out.empty()) {
      std::ostringstream os;
      nn::write_windows_csv(os, cut_windows(eval, result.window_starts, window, 1.0f));
      write_file_atomic(s.windows_out, os.str());
    }
    eval_windows = cut_windows(eval, result.window_starts, window, scale);
  }

  std::vector<int> resolutions{0};
  resolutions.insert(resolutions.end(), bits.begin(), bits.end());
  const int ledger_bits = bits.empty() ? 0 : *std::max_element(bits.begin(), bits.end());
  const ArrayConfig array{s.counter_bits, GroState::kDefaultStages};

  for (int b : resolutions) {
    ResolutionScores r;
    r.bits = b;
    r.label = resolution_label(b);
    nn::Inference engine(result.model, b == 0 ? nn::Backend::kFloat : nn::Backend::kPmacSim,
                         b == 0 ? 8 : b, array);
    const auto val_scores = score_all(engine, validation_windows);
    engine = nn::Inference(result.model, engine.backend(), engine.bits(), array);
    r.scores = score_all(engine, eval_windows);
    if (b != 0 && b == ledger_bits) {
      result.pmac_ledger = engine.ledger();
      result.pmac_macs = engine.ledger().mac_ops;
    }

    r.threshold = nn::percentile(val_scores, s.threshold_percentile);
    const auto alerts = nn::detect(r.scores, std::max(r.threshold, 1e-300));
    std::size_t pos = 0, neg = 0, tp = 0, fp = 0;
    for (std::size_t i = 0; i < alerts.size(); ++i) {
      if (result.labels[i] != 0) {
        ++pos;
        tp += alerts[i] ? 1 : 0;
      } else {
        ++neg;
        fp += alerts[i] ? 1 : 0;
      }
    }
    r.detection_rate = pos > 0 ? double(tp) / double(pos) : std::nan("");
    r.false_positive_rate = neg > 0 ? double(fp) / double(neg) : std::nan("");
    r.auc = nn::roc_auc(r.scores, result.labels);
    r.correlation_with_float =
        b == 0 ? 1.0 : nn::pearson(r.scores, result.resolutions.front().scores);
    result.resolutions.push_back(std::move(r));
  }
  return result;
}

namespace {

std::string scores_script(const AnomalyResult& r) {
  std::ostringstream os;
  os << "# phasemac gnuplot script v1\n"
        "set datafile separator ','\n"
        "set xlabel 'window'\nset ylabel 'anomaly score (MSE)'\nset logscale y\nset grid\n"
        "set terminal pngcairo size 900,500\nset output 'anomaly_scores.png'\nplot ";
  for (std::size_t i = 0; i < r.resolutions.size(); ++i) {
    os << (i ? ", " : "") << "'anomaly_scores.csv' every ::2 using 1:" << i + 4
       << " with lines title '" << r.resolutions[i].label << "'";
  }
  os << '\n';
  return os.str();
}

}  // namespace

int cmd_anomaly(const ExperimentConfig& cfg, std::ostream& log) {
  const auto r = run_anomaly(cfg.anomaly, cfg.bits, cfg.seed);

  std::ostringstream header;
  header << "window,start,label";
  for (const auto& res : r.resolutions) {
    header << ',' << res.label;
  }
  CsvWriter scores("anomaly_scores", {header.str()});
  for (std::size_t i = 0; i < r.window_starts.size(); ++i) {
    scores.cell(static_cast<std::uint64_t>(i))
        .cell(static_cast<std::uint64_t>(r.window_starts[i]))
        .cell(static_cast<std::uint64_t>(r.labels[i]));
    for (const auto& res : r.resolutions) {
      scores.cell(res.scores[i]);
    }
    scores.end_row();
  }
  write_file_atomic(cfg.out_dir / "anomaly_scores.csv", scores.str());
  write_file_atomic(cfg.out_dir / "anomaly_scores.gp", scores_script(r));

  CsvWriter summary("anomaly_summary",
                    {"resolution", "auc", "correlation_with_float", "threshold", "detection_rate",
                     "false_positive_rate", "mean_score"});
  for (const auto& res : r.resolutions) {
    double mean = 0;
    for (double v : res.scores) {
      mean += v;
    }
    mean /= static_cast<double>(std::max<std::size_t>(1, res.scores.size()));
    summary.cell(res.label)
        .cell(res.auc)
        .cell(res.correlation_with_float)
        .cell(res.threshold)
        .cell(res.detection_rate)
        .cell(res.false_positive_rate)
        .cell(mean)
        .end_row();
    log << res.label << ": AUC " << format_number(res.auc) << ", corr with float "
        << format_number(res.correlation_with_float) << ", detection "
        << format_number(res.detection_rate) << ", false positives "
        << format_number(res.false_positive_rate) << '\n';
  }
  write_file_atomic(cfg.out_dir / "anomaly_summary.csv", summary.str());

  CsvWriter loss("training_loss", {"epoch", "loss"});
  for (std::size_t e = 0; e < r.epoch_losses.size(); ++e) {
    loss.cell(static_cast<std::uint64_t>(e)).cell(r.epoch_losses[e]).end_row();
  }
  write_file_atomic(cfg.out_dir / "anomaly_training_loss.csv", loss.str());

  if (r.pmac_macs > 0) {
    const auto eff = energy::efficiency_report(r.pmac_ledger, r.pmac_macs, cfg.energy);
    CsvWriter e("anomaly_energy", {"metric", "value", "unit"});
    e.cell("mac_ops").cell(r.pmac_ledger.mac_ops).cell("MACs").end_row();
    e.cell("inverter_transitions").cell(r.pmac_ledger.inverter_transitions).cell("transitions").end_row();
    e.cell("weight_reads").cell(r.pmac_ledger.weight_reads).cell("reads").end_row();
    e.cell("transitions_per_op").cell(eff.transitions_per_op).cell("transitions").end_row();
    e.cell("energy_per_mac").cell(eff.energy_per_mac_fj).cell("fJ").end_row();
    e.cell("tops_per_w").cell(eff.tops_per_w).cell("TOPS/W").end_row();
    e.cell("vs_dmac").cell(eff.vs_dmac).cell("x").end_row();
    write_file_atomic(cfg.out_dir / "anomaly_energy.csv", e.str());
    log << "PMAC workload: " << format_number(eff.transitions_per_op) << " transitions/MAC, "
        << format_number(eff.tops_per_w) << " TOPS/W\n";
  }
  return 0;
}

}  // namespace phasemac::experiments
