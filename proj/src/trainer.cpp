#include "ldts/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "csv.hpp"
#include "ldts/error.hpp"
#include "ldts/rng.hpp"
#include "ldts/sampler.hpp"

namespace ldts {

namespace {

constexpr std::uint64_t kInitStream = 0;

// Sampling at epoch t draws from substream(1 + t), so a run's early epochs
// never depend on how many epochs it ends up training for.
std::uint64_t epoch_stream(int epoch) {
  return 1 + static_cast<std::uint64_t>(epoch);
}

double quiet_nan() { return std::numeric_limits<double>::quiet_NaN(); }

bool all_finite(const std::vector<double>& values) {
  for (double v : values) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

SampleSet full_sample(int n) {
  SampleSet sample;
  sample.indices.resize(n);
  std::iota(sample.indices.begin(), sample.indices.end(), 0);
  return sample;
}

double mean_over(const std::vector<double>& values,
                 const std::vector<int>& indices) {
  double total = 0.0;
  for (int i : indices) total += values[static_cast<std::size_t>(i)];
  return total / static_cast<double>(indices.size());
}

std::string format_report_row(const EpochReport& r) {
  std::string row = std::to_string(r.epoch);
  row += ',' + std::to_string(r.sampled_count);
  row += ',' + detail::format_double(r.sampled_mean_loss);
  row += ',' + detail::format_double(r.train_mean_loss);
  row += ',' + detail::format_double(r.val_accuracy);
  row += ',' + detail::format_double(r.test_accuracy);
  row += ',' + detail::format_double(r.clean_sample_fraction);
  row += ',' + detail::format_double(r.mean_prob_clean);
  row += ',' + detail::format_double(r.mean_prob_noisy);
  return row;
}

}  // namespace

Strategy strategy_from_string(std::string_view name) {
  if (name == "plain") return Strategy::Plain;
  if (name == "absloss") return Strategy::AbsoluteLossCurriculum;
  if (name == "ldts") return Strategy::LossDecreaseCurriculum;
  throw ArgumentError("unknown strategy '" + std::string(name) +
                      "' (expected plain, absloss, or ldts)");
}

std::string_view to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::Plain:
      return "plain";
    case Strategy::AbsoluteLossCurriculum:
      return "absloss";
    case Strategy::LossDecreaseCurriculum:
      return "ldts";
  }
  return "plain";
}

void validate(const TrainConfig& cfg) {
  validate(cfg.pacing);
  if (!(cfg.learning_rate > 0.0)) {
    throw ConfigError("train: learning rate must be positive");
  }
  if (cfg.max_epochs < 1) {
    throw ConfigError("train: max_epochs must be >= 1");
  }
  if (cfg.strategy != Strategy::Plain &&
      cfg.max_epochs < cfg.pacing.epochs_to_full) {
    throw ConfigError(
        "train: max_epochs must be >= the pacing horizon for curriculum "
        "strategies");
  }
  if (cfg.patience < 1) {
    throw ConfigError("train: patience must be >= 1");
  }
  if (cfg.hidden_dim < 1) {
    throw ConfigError("train: hidden_dim must be >= 1");
  }
}

TrainResult train(const TrainConfig& cfg, const Dataset& dataset,
                  const EpochObserver& observer) {
  validate(cfg);
  validate(dataset);
  if (dataset.class_count < 2) {
    throw ConfigError("train: dataset must have at least 2 classes");
  }

  const Eigen::MatrixXd aggregated = aggregate_features(dataset);
  const std::vector<int> train_nodes = split_indices(dataset, Split::Train);
  const int n = static_cast<int>(train_nodes.size());

  Eigen::MatrixXd train_features(n, aggregated.cols());
  std::vector<int> train_labels(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    train_features.row(i) = aggregated.row(train_nodes[i]);
    train_labels[static_cast<std::size_t>(i)] = dataset.labels[train_nodes[i]];
  }

  // Positions (into the train split) of clean vs. corrupted nodes.
  std::vector<int> clean_positions;
  std::vector<int> noisy_positions;
  if (dataset.has_noise_flags()) {
    for (int i = 0; i < n; ++i) {
      if (dataset.noisy_flags[train_nodes[i]]) {
        noisy_positions.push_back(i);
      } else {
        clean_positions.push_back(i);
      }
    }
  }

  RngState root(cfg.seed);
  RngState init_rng = root.substream(kInitStream);
  ModelParams params = init_params(static_cast<int>(aggregated.cols()),
                                   cfg.hidden_dim, dataset.class_count,
                                   init_rng);

  // preloss starts at all zeros, so epoch 0's decrease is simply -loss.
  std::vector<double> previous_losses(static_cast<std::size_t>(n), 0.0);

  TrainResult result;
  result.params = params;
  result.best_val_accuracy = -1.0;
  int wait = 0;

  for (int epoch = 0; epoch < cfg.max_epochs; ++epoch) {
    const Logits logits = forward(params, train_features);
    const std::vector<double> losses = per_sample_loss(logits, train_labels);
    if (!all_finite(losses)) {
      result.diverged = true;
      break;
    }

    SampleSet sample;
    SelectionDistribution distribution;
    bool have_distribution = false;
    int k = n;
    if (cfg.strategy == Strategy::Plain) {
      sample = full_sample(n);
    } else {
      k = sample_count(n, pacing_fraction(cfg.pacing, epoch));
      if (cfg.strategy == Strategy::LossDecreaseCurriculum) {
        // The distribution is built every epoch (telemetry wants it even
        // when k = n, where drawing would be a no-op).
        const std::vector<double> decrease =
            loss_decrease({previous_losses, losses, epoch});
        distribution = to_probability(decrease);
        have_distribution = true;
        if (k < n) {
          RngState epoch_rng = root.substream(epoch_stream(epoch));
          sample = sample_without_replacement(distribution, k, epoch_rng);
        } else {
          sample = full_sample(n);
        }
      } else {
        sample = k < n ? easiest_by_absolute_loss(losses, k) : full_sample(n);
      }
    }

    ParamGradients grads;
    try {
      grads = masked_backward(params, train_features, train_labels, sample);
      params = sgd_step(params, grads, cfg.learning_rate);
    } catch (const NumericError&) {
      result.diverged = true;
      break;
    }
    previous_losses = losses;

    EpochReport report;
    report.epoch = epoch;
    report.sampled_count = sample.size();
    report.sampled_mean_loss = mean_over(losses, sample.indices);
    report.train_mean_loss =
        std::accumulate(losses.begin(), losses.end(), 0.0) / n;
    report.val_accuracy =
        evaluate_aggregated(params, aggregated, dataset, Split::Val);
    report.test_accuracy =
        evaluate_aggregated(params, aggregated, dataset, Split::Test);

    report.clean_sample_fraction = quiet_nan();
    report.mean_prob_clean = quiet_nan();
    report.mean_prob_noisy = quiet_nan();
    if (dataset.has_noise_flags()) {
      int clean_in_sample = 0;
      for (int i : sample.indices) {
        if (!dataset.noisy_flags[train_nodes[i]]) ++clean_in_sample;
      }
      report.clean_sample_fraction =
          static_cast<double>(clean_in_sample) / sample.size();
      if (have_distribution && !clean_positions.empty() &&
          !noisy_positions.empty()) {
        report.mean_prob_clean =
            mean_over(distribution.probabilities, clean_positions);
        report.mean_prob_noisy =
            mean_over(distribution.probabilities, noisy_positions);
      }
    }
    result.reports.push_back(report);

    if (observer) {
      observer(EpochTrace{epoch, losses,
                          have_distribution ? &distribution : nullptr, sample,
                          params});
    }

    const bool improved = report.val_accuracy > result.best_val_accuracy;
    if (improved) {
      result.best_val_accuracy = report.val_accuracy;
      result.best_epoch = epoch;
      result.test_at_best_val = report.test_accuracy;
      result.params = params;
    }

    // Patience only counts once the schedule has handed over the full
    // training set.
    if (epoch > cfg.pacing.epochs_to_full) {
      wait = improved ? 0 : wait + 1;
      if (wait >= cfg.patience) break;
    }
  }

  return result;
}

double evaluate(const ModelParams& params, const Dataset& dataset,
                Split split) {
  return evaluate_aggregated(params, aggregate_features(dataset), dataset,
                             split);
}

double evaluate_aggregated(const ModelParams& params,
                           const Eigen::MatrixXd& aggregated,
                           const Dataset& dataset, Split split) {
  const std::vector<int> nodes = split_indices(dataset, split);
  if (nodes.empty()) {
    throw ArgumentError("evaluate: split '" + std::string(to_string(split)) +
                        "' is empty");
  }
  Eigen::MatrixXd features(static_cast<int>(nodes.size()), aggregated.cols());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    features.row(static_cast<Eigen::Index>(i)) = aggregated.row(nodes[i]);
  }
  const Logits logits = forward(params, features);

  int correct = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto row = logits.row(static_cast<Eigen::Index>(i));
    int best = 0;
    for (int c = 1; c < logits.cols(); ++c) {
      if (row(c) > row(best)) best = c;
    }
    if (best == dataset.labels[nodes[i]]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(nodes.size());
}

void write_telemetry_csv(const std::filesystem::path& file,
                         const std::vector<EpochReport>& reports,
                         bool with_timestamp) {
  detail::FileWriter out(file.string());
  if (with_timestamp) out.line(detail::timestamp_comment());
  out.line(
      "epoch,sampled_count,sampled_mean_loss,train_mean_loss,val_accuracy,"
      "test_accuracy,clean_sample_fraction,mean_prob_clean,mean_prob_noisy");
  for (const EpochReport& r : reports) out.line(format_report_row(r));
  out.close();
}

void append_run_summary(const std::filesystem::path& results_file,
                        Strategy strategy, std::uint64_t seed,
                        double val_accuracy, double test_accuracy) {
  const bool fresh = !std::filesystem::exists(results_file);
  std::ofstream out(results_file, std::ios::app);
  if (!out) {
    throw IoError("cannot open " + results_file.string() + " for writing");
  }
  if (fresh) out << "strategy,seed,val_accuracy,test_accuracy\n";
  out << to_string(strategy) << ',' << seed << ','
      << detail::format_double(val_accuracy) << ','
      << detail::format_double(test_accuracy) << '\n';
  if (!out) throw IoError("failed writing " + results_file.string());
}

}  // namespace ldts
