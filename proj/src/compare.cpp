#include "ldts/compare.hpp"

#include <cmath>
#include <cstdio>

#include "csv.hpp"
#include "ldts/error.hpp"

namespace ldts {

namespace {

std::string telemetry_name(Strategy strategy, std::uint64_t seed) {
  return "telemetry_" + std::string(to_string(strategy)) + "_seed" +
         std::to_string(seed) + ".csv";
}

std::string format_mean_std(double mean, double std_dev) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f ± %.4f", mean, std_dev);
  return buf;
}

}  // namespace

std::vector<RunSummary> run_comparison(const CompareSpec& spec,
                                       const Dataset& dataset,
                                       const std::filesystem::path& out_dir,
                                       bool with_timestamp) {
  if (spec.strategies.empty() || spec.seeds.empty()) {
    throw ConfigError("compare: need at least one strategy and one seed");
  }
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create directory " + out_dir.string());

  std::vector<RunSummary> runs;
  for (Strategy strategy : spec.strategies) {
    for (std::uint64_t seed : spec.seeds) {
      TrainConfig cfg = spec.base;
      cfg.strategy = strategy;
      cfg.seed = seed;
      const TrainResult result = train(cfg, dataset);
      write_telemetry_csv(out_dir / telemetry_name(strategy, seed),
                          result.reports, with_timestamp);
      runs.push_back({strategy, seed, result.best_epoch,
                      result.best_val_accuracy, result.test_at_best_val});
    }
  }

  // results.csv is rewritten from scratch: one fixed-precision row per run,
  // byte-identical across repeat invocations.
  detail::FileWriter results((out_dir / "results.csv").string());
  results.line("strategy,seed,val_accuracy,test_accuracy");
  for (const RunSummary& run : runs) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%s,%llu,%.10f,%.10f",
                  std::string(to_string(run.strategy)).c_str(),
                  static_cast<unsigned long long>(run.seed), run.val_accuracy,
                  run.test_accuracy);
    results.line(buf);
  }
  results.close();

  const auto summary = summarize_runs(runs, spec.strategies);
  detail::FileWriter summary_file((out_dir / "summary.csv").string());
  if (with_timestamp) summary_file.line(detail::timestamp_comment());
  summary_file.line(format_summary_table(summary));
  summary_file.close();

  return runs;
}

std::vector<StrategySummary> summarize_runs(
    const std::vector<RunSummary>& runs,
    const std::vector<Strategy>& strategy_order) {
  std::vector<StrategySummary> rows;
  for (Strategy strategy : strategy_order) {
    StrategySummary row;
    row.strategy = strategy;
    double val_sum = 0.0;
    double test_sum = 0.0;
    for (const RunSummary& run : runs) {
      if (run.strategy != strategy) continue;
      ++row.runs;
      val_sum += run.val_accuracy;
      test_sum += run.test_accuracy;
    }
    if (row.runs == 0) continue;
    row.val_mean = val_sum / row.runs;
    row.test_mean = test_sum / row.runs;
    double val_sq = 0.0;
    double test_sq = 0.0;
    for (const RunSummary& run : runs) {
      if (run.strategy != strategy) continue;
      val_sq += (run.val_accuracy - row.val_mean) *
                (run.val_accuracy - row.val_mean);
      test_sq += (run.test_accuracy - row.test_mean) *
                 (run.test_accuracy - row.test_mean);
    }
    row.val_std = std::sqrt(val_sq / row.runs);
    row.test_std = std::sqrt(test_sq / row.runs);
    rows.push_back(row);
  }
  return rows;
}

std::string format_summary_table(const std::vector<StrategySummary>& rows) {
  std::string table = "strategy,valid,test";
  for (const StrategySummary& row : rows) {
    table += '\n';
    table += std::string(to_string(row.strategy)) + ',' +
             format_mean_std(row.val_mean, row.val_std) + ',' +
             format_mean_std(row.test_mean, row.test_std);
  }
  return table;
}

}  // namespace ldts
