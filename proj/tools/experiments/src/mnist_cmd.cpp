#include <algorithm>

#include "phasemac/experiments/commands.hpp"
#include "phasemac/experiments/csv.hpp"
#include "phasemac/experiments/idx.hpp"
#include "phasemac/inference.hpp"
#include "phasemac/trainer.hpp"

namespace phasemac::experiments {

namespace {

std::vector<float> to_input(std::span<const std::uint8_t> image) {
  std::vector<float> x(image.size());
  std::transform(image.begin(), image.end(), x.begin(),
                 [](std::uint8_t p) { return static_cast<float>(p) / 255.0f; });
  return x;
}

double accuracy(nn::Inference& engine, const MnistSet& set, std::size_t count) {
  std::size_t correct = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const auto logits = engine.forward(to_input(set.image(i)));
    const auto best = std::max_element(logits.begin(), logits.end()) - logits.begin();
    correct += static_cast<std::size_t>(best) == set.labels[i] ? 1 : 0;
  }
  return count == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(count);
}

}  // namespace

MnistResult run_mnist(const MnistSettings& s, const std::filesystem::path& mnist_dir,
                      std::uint64_t seed, bool full) {
  const auto train = load_mnist(mnist_dir, "train");
  const auto test = load_mnist(mnist_dir, "t10k");

  MnistResult r;
  r.train_samples = full ? train.size() : std::min(s.train_samples, train.size());
  r.test_samples = full ? test.size() : std::min(s.test_samples, test.size());

  nn::Dataset data(train.pixels_per_image(), 10);
  std::vector<float> onehot(10);
  for (std::size_t i = 0; i < r.train_samples; ++i) {
    std::fill(onehot.begin(), onehot.end(), 0.0f);
    onehot[train.labels[i]] = 1.0f;
    data.add(to_input(train.image(i)), onehot);
  }

  const auto& hidden = full ? s.full_hidden : s.hidden;
  r.dims.push_back(train.pixels_per_image());
  r.dims.insert(r.dims.end(), hidden.begin(), hidden.end());
  r.dims.push_back(10);

  nn::SgdParams sgd;
  sgd.learning_rate = s.learning_rate;
  sgd.epochs = full ? s.full_epochs : s.epochs;
  sgd.batch_size = s.batch_size;
  sgd.loss = nn::Loss::kSoftmaxCrossEntropy;
  sgd.seed = seed * 2 + 1;
  const auto model =
      nn::train_sgd(nn::FcModel::random(r.dims, seed), data, sgd, &r.epoch_losses);

  nn::Inference float_engine(model, nn::Backend::kFloat);
  r.float_accuracy = accuracy(float_engine, test, r.test_samples);
  nn::Inference pmac_engine(model, nn::Backend::kPmacSim, 8);
  r.pmac_accuracy = accuracy(pmac_engine, test, r.test_samples);
  r.pmac_ledger = pmac_engine.ledger();
  return r;
}

int cmd_mnist(const ExperimentConfig& cfg, std::ostream& log) {
  const auto r = run_mnist(cfg.mnist, cfg.mnist_dir(), cfg.seed, cfg.full);

  CsvWriter acc("mnist_accuracy", {"backend", "bits", "accuracy"});
  acc.cell("float").cell("32").cell(r.float_accuracy).end_row();
  acc.cell("pmac-sim").cell("8").cell(r.pmac_accuracy).end_row();
  write_file_atomic(cfg.out_dir / "mnist_accuracy.csv", acc.str());

  CsvWriter summary("mnist_summary", {"metric", "value"});
  summary.cell("train_samples").cell(static_cast<std::uint64_t>(r.train_samples)).end_row();
  summary.cell("test_samples").cell(static_cast<std::uint64_t>(r.test_samples)).end_row();
  summary.cell("layers").cell(static_cast<std::uint64_t>(r.dims.size() - 1)).end_row();
  summary.cell("gap_points").cell(r.gap_points()).end_row();
  summary.cell("pmac_mac_ops").cell(r.pmac_ledger.mac_ops).end_row();
  summary.cell("pmac_inverter_transitions").cell(r.pmac_ledger.inverter_transitions).end_row();
  write_file_atomic(cfg.out_dir / "mnist_summary.csv", summary.str());

  CsvWriter loss("training_loss", {"epoch", "loss"});
  for (std::size_t e = 0; e < r.epoch_losses.size(); ++e) {
    loss.cell(static_cast<std::uint64_t>(e)).cell(r.epoch_losses[e]).end_row();
  }
  write_file_atomic(cfg.out_dir / "mnist_training_loss.csv", loss.str());

  log << "mnist (" << r.train_samples << " train / " << r.test_samples << " test, "
      << r.dims.size() - 1 << " layers): float " << format_number(100 * r.float_accuracy)
      << "%, 8b PMAC " << format_number(100 * r.pmac_accuracy) << "%, gap "
      << format_number(r.gap_points()) << " points\n";
  return 0;
}

}  // namespace phasemac::experiments
