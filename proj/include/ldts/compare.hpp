#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ldts/data.hpp"
#include "ldts/trainer.hpp"

namespace ldts {

// A strategy x seed grid sharing one dataset and one base TrainConfig
// (strategy and seed are overridden per run).
struct CompareSpec {
  std::vector<Strategy> strategies;
  std::vector<std::uint64_t> seeds;
  TrainConfig base;
};

struct RunSummary {
  Strategy strategy;
  std::uint64_t seed = 0;
  int best_epoch = -1;
  double val_accuracy = 0.0;
  double test_accuracy = 0.0;
};

// Mean and population standard deviation over the seeds of one strategy.
struct StrategySummary {
  Strategy strategy;
  int runs = 0;
  double val_mean = 0.0;
  double val_std = 0.0;
  double test_mean = 0.0;
  double test_std = 0.0;
};

// Runs the grid in (strategy, seed) order. Writes per-run telemetry files,
// a fresh results.csv, and summary.csv into out_dir; returns the run
// summaries in grid order.
std::vector<RunSummary> run_comparison(const CompareSpec& spec,
                                       const Dataset& dataset,
                                       const std::filesystem::path& out_dir,
                                       bool with_timestamp);

std::vector<StrategySummary> summarize_runs(
    const std::vector<RunSummary>& runs,
    const std::vector<Strategy>& strategy_order);

// "strategy,valid,test" header plus one "mean ± std" row per strategy.
std::string format_summary_table(const std::vector<StrategySummary>& rows);

}  // namespace ldts
