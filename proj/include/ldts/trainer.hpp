#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string_view>
#include <vector>

#include "ldts/data.hpp"
#include "ldts/difficulty.hpp"
#include "ldts/nn.hpp"
#include "ldts/pacing.hpp"
#include "ldts/sample_set.hpp"

namespace ldts {

enum class Strategy {
  Plain,                   // full-batch every epoch
  AbsoluteLossCurriculum,  // deterministic easiest-k by current loss
  LossDecreaseCurriculum,  // sample by softmax of per-node loss decrease
};

Strategy strategy_from_string(std::string_view name);
std::string_view to_string(Strategy strategy);

struct TrainConfig {
  Strategy strategy = Strategy::LossDecreaseCurriculum;
  PacingConfig pacing;
  double learning_rate = 0.1;
  int max_epochs = 400;
  int patience = 20;
  int hidden_dim = 32;
  std::uint64_t seed = 0;
};

void validate(const TrainConfig& cfg);

// Per-epoch telemetry. clean_sample_fraction and the mean-probability
// columns are NaN when the dataset carries no noise flags; the probability
// columns are additionally NaN for strategies that never build a selection
// distribution.
struct EpochReport {
  int epoch = 0;
  int sampled_count = 0;
  double sampled_mean_loss = 0.0;
  double train_mean_loss = 0.0;
  double val_accuracy = 0.0;
  double test_accuracy = 0.0;
  double clean_sample_fraction = 0.0;
  double mean_prob_clean = 0.0;
  double mean_prob_noisy = 0.0;
};

// Everything the loop knows about one epoch, surfaced to an optional
// observer. References are valid only during the callback.
struct EpochTrace {
  int epoch;
  const std::vector<double>& losses;          // per train node, pre-update
  const SelectionDistribution* distribution;  // null unless loss-decrease
  const SampleSet& sample;                    // positions into the train split
  const ModelParams& params;                  // after this epoch's update
};

using EpochObserver = std::function<void(const EpochTrace&)>;

struct TrainResult {
  ModelParams params;  // from the best-validation epoch
  std::vector<EpochReport> reports;
  int best_epoch = -1;
  double best_val_accuracy = 0.0;
  double test_at_best_val = 0.0;
  bool diverged = false;
};

// Runs one training strategy end to end: forward over the train split,
// per-node losses, strategy-specific selection, masked backward over the
// selection, SGD step, telemetry. Past the pacing horizon every strategy
// uses the full train set and validation-accuracy patience decides when to
// stop. Returns the parameters from the best-validation epoch.
TrainResult train(const TrainConfig& cfg, const Dataset& dataset,
                  const EpochObserver& observer = {});

// Share of split nodes whose argmax logit matches the label; argmax ties go
// to the lowest class index.
double evaluate(const ModelParams& params, const Dataset& dataset,
                Split split);

// Same, against pre-aggregated features (row i = target node i).
double evaluate_aggregated(const ModelParams& params,
                           const Eigen::MatrixXd& aggregated,
                           const Dataset& dataset, Split split);

// Telemetry CSV, one row per EpochReport. A leading "# generated ..." line
// is written unless with_timestamp is false.
void write_telemetry_csv(const std::filesystem::path& file,
                         const std::vector<EpochReport>& reports,
                         bool with_timestamp);

// Appends "strategy,seed,val,test" to results.csv, creating it (with its
// header) when missing.
void append_run_summary(const std::filesystem::path& results_file,
                        Strategy strategy, std::uint64_t seed,
                        double val_accuracy, double test_accuracy);

}  // namespace ldts
