// ldts: curriculum-training toolkit CLI.
//
// Subcommands: generate (synthetic dataset), train (one strategy),
// compare (strategy x seed grid), pacing-table (schedule inspection).
// Exit codes: 0 success, 1 runtime/I-O failure, 2 usage error.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ldts/compare.hpp"
#include "ldts/data.hpp"
#include "ldts/error.hpp"
#include "ldts/nn.hpp"
#include "ldts/pacing.hpp"
#include "ldts/trainer.hpp"

namespace {

namespace fs = std::filesystem;

struct GenerateArgs {
  ldts::SynthConfig config;
  std::string out;
};

struct TrainArgs {
  std::string data_dir;
  std::string strategy = "ldts";
  std::string kind = "linear";
  ldts::TrainConfig config;
  std::string out = ".";
  bool no_timestamp = false;
};

struct CompareArgs {
  std::string data_dir;
  std::vector<std::string> strategies = {"plain", "absloss", "ldts"};
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  std::string kind = "linear";
  ldts::TrainConfig base;
  std::string out = ".";
  bool no_timestamp = false;
};

struct PacingArgs {
  std::string kind = "linear";
  double lambda0 = 0.25;
  int horizon = 100;
};

void add_pacing_flags(CLI::App* cmd, std::string& kind, double& lambda0,
                      int& horizon) {
  cmd->add_option("--kind", kind, "Pacing curve")
      ->check(CLI::IsMember({"linear", "root", "geom"}))
      ->capture_default_str();
  cmd->add_option("--lambda0", lambda0,
                  "Initial fraction of training nodes, in (0, 1]")
      ->check(CLI::Range(std::nextafter(0.0, 1.0), 1.0))
      ->capture_default_str();
  cmd->add_option("--T", horizon, "Epoch at which the schedule reaches 1")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

void add_train_flags(CLI::App* cmd, ldts::TrainConfig& config,
                     std::string& kind) {
  add_pacing_flags(cmd, kind, config.pacing.initial_fraction,
                   config.pacing.epochs_to_full);
  cmd->add_option("--lr", config.learning_rate, "SGD learning rate")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--max-epochs", config.max_epochs, "Epoch budget")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--patience", config.patience,
                  "Validation-accuracy patience after the schedule reaches 1")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--hidden", config.hidden_dim, "Hidden layer width")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

void cmd_generate(const GenerateArgs& args) {
  const ldts::Dataset dataset = ldts::generate_synthetic(args.config);
  ldts::save_dataset(dataset, args.out);
  std::cerr << "wrote dataset (" << dataset.node_count() << " nodes, "
            << dataset.class_count << " classes) to " << args.out << "\n";
}

void cmd_train(const TrainArgs& args) {
  ldts::TrainConfig config = args.config;
  config.strategy = ldts::strategy_from_string(args.strategy);
  config.pacing.kind = ldts::pacing_kind_from_string(args.kind);

  const ldts::Dataset dataset = ldts::load_dataset(args.data_dir);
  const ldts::TrainResult result = ldts::train(config, dataset);
  if (result.diverged) {
    std::cerr << "training diverged (non-finite loss); reporting the best "
                 "epoch before divergence\n";
  }
  if (result.reports.empty()) {
    throw ldts::NumericError("training diverged before completing one epoch");
  }

  const fs::path out_dir(args.out);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw ldts::IoError("cannot create directory " + out_dir.string());

  const std::string tag = std::string(ldts::to_string(config.strategy)) +
                          "_seed" + std::to_string(config.seed);
  ldts::write_telemetry_csv(out_dir / ("telemetry_" + tag + ".csv"),
                            result.reports, !args.no_timestamp);
  ldts::save_checkpoint(result.params, out_dir / ("model_" + tag + ".ckpt"));
  ldts::append_run_summary(out_dir / "results.csv", config.strategy,
                           config.seed, result.best_val_accuracy,
                           result.test_at_best_val);

  std::printf("val=%.6f test=%.6f\n", result.best_val_accuracy,
              result.test_at_best_val);
}

void cmd_compare(const CompareArgs& args) {
  ldts::CompareSpec spec;
  spec.base = args.base;
  spec.base.pacing.kind = ldts::pacing_kind_from_string(args.kind);
  for (const std::string& name : args.strategies) {
    spec.strategies.push_back(ldts::strategy_from_string(name));
  }
  spec.seeds = args.seeds;

  const ldts::Dataset dataset = ldts::load_dataset(args.data_dir);
  const auto runs =
      ldts::run_comparison(spec, dataset, args.out, !args.no_timestamp);
  const auto summary = ldts::summarize_runs(runs, spec.strategies);
  std::cout << ldts::format_summary_table(summary) << "\n";
}

void cmd_pacing_table(const PacingArgs& args) {
  ldts::PacingConfig config{args.lambda0, args.horizon,
                            ldts::pacing_kind_from_string(args.kind)};
  ldts::validate(config);
  std::printf("epoch,fraction\n");
  for (int epoch = 0; epoch <= config.epochs_to_full; ++epoch) {
    std::printf("%d,%.10f\n", epoch, ldts::pacing_fraction(config, epoch));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Loss-decrease-aware curriculum training toolkit"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand(
      "generate", "Generate a synthetic heterogeneous dataset directory");
  generate->add_option("--n", gen.config.node_count, "Target node count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  generate->add_option("--classes", gen.config.class_count, "Class count")
      ->check(CLI::Range(2, 1 << 20))
      ->capture_default_str();
  generate->add_option("--dim", gen.config.feature_dim, "Raw feature dim")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  generate
      ->add_option("--sep", gen.config.cluster_separation,
                   "Distance of class means from the origin")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  generate
      ->add_option("--noise", gen.config.noise_fraction,
                   "Fraction of train labels corrupted, in [0, 1)")
      ->check(CLI::Range(0.0, std::nextafter(1.0, 0.0)))
      ->capture_default_str();
  generate
      ->add_option("--aux-types", gen.config.aux_type_count,
                   "Auxiliary node types (one relation each)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  generate
      ->add_option("--edges-per-node", gen.config.edges_per_node,
                   "Edges drawn per target node per relation")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  generate->add_option("--seed", gen.config.seed, "Generator seed")
      ->capture_default_str();
  generate->add_option("--out", gen.out, "Output dataset directory")
      ->required();
  generate->callback([&] { cmd_generate(gen); });

  TrainArgs tr;
  CLI::App* train =
      app.add_subcommand("train", "Train one strategy on a dataset");
  train->set_config("--config", "",
                    "Flat key=value file with the flags below");
  train->add_option("--data", tr.data_dir, "Dataset directory")->required();
  train
      ->add_option("--strategy", tr.strategy,
                   "Training strategy: plain, absloss, or ldts")
      ->check(CLI::IsMember({"plain", "absloss", "ldts"}))
      ->capture_default_str();
  add_train_flags(train, tr.config, tr.kind);
  train->add_option("--seed", tr.config.seed, "Run seed")
      ->capture_default_str();
  train->add_option("--out", tr.out, "Output directory")
      ->capture_default_str();
  train->add_flag("--no-timestamp", tr.no_timestamp,
                  "Omit the timestamp comment from telemetry files");
  train->callback([&] { cmd_train(tr); });

  CompareArgs cmp;
  CLI::App* compare = app.add_subcommand(
      "compare", "Run a strategy x seed grid and summarize accuracies");
  compare->set_config("--config", "",
                      "Flat key=value file with the flags below");
  compare->add_option("--data", cmp.data_dir, "Dataset directory")->required();
  compare
      ->add_option("--strategies", cmp.strategies,
                   "Strategies to compare (default: plain absloss ldts)")
      ->check(CLI::IsMember({"plain", "absloss", "ldts"}));
  compare->add_option("--seeds", cmp.seeds, "Seeds (default: 1 2 3 4 5)");
  add_train_flags(compare, cmp.base, cmp.kind);
  compare->add_option("--out", cmp.out, "Output directory")
      ->capture_default_str();
  compare->add_flag("--no-timestamp", cmp.no_timestamp,
                    "Omit timestamp comments from run outputs");
  compare->callback([&] { cmd_compare(cmp); });

  PacingArgs pt;
  CLI::App* pacing_table = app.add_subcommand(
      "pacing-table", "Print epoch,fraction CSV for one pacing curve");
  add_pacing_flags(pacing_table, pt.kind, pt.lambda0, pt.horizon);
  pacing_table->callback([&] { cmd_pacing_table(pt); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ldts::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
