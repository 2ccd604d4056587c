#include "ldts/trainer.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"
#include "ldts/error.hpp"
#include "support.hpp"

namespace {

using ldts::test::easy_dataset;

struct Capture {
  std::vector<std::vector<double>> losses;
  std::vector<std::vector<double>> probabilities;
  std::vector<std::vector<int>> samples;
  std::vector<ldts::ModelParams> params;

  ldts::EpochObserver observer() {
    return [this](const ldts::EpochTrace& trace) {
      losses.push_back(trace.losses);
      probabilities.push_back(trace.distribution
                                  ? trace.distribution->probabilities
                                  : std::vector<double>{});
      samples.push_back(trace.sample.indices);
      params.push_back(trace.params);
    };
  }
};

bool params_close(const ldts::ModelParams& a, const ldts::ModelParams& b,
                  double tol) {
  return (a.w1 - b.w1).cwiseAbs().maxCoeff() <= tol &&
         (a.b1 - b.b1).cwiseAbs().maxCoeff() <= tol &&
         (a.w2 - b.w2).cwiseAbs().maxCoeff() <= tol &&
         (a.b2 - b.b2).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace

TEST_CASE("evaluate counts argmax hits with low-index tie breaking") {
  ldts::Dataset ds = easy_dataset(100, 4.0, 0.0, 3);
  ldts::RngState rng(1);
  const auto params = ldts::init_params(
      static_cast<int>(ldts::aggregate_features(ds).cols()), 8,
      ds.class_count, rng);

  const auto aggregated = ldts::aggregate_features(ds);
  for (ldts::Split split :
       {ldts::Split::Train, ldts::Split::Val, ldts::Split::Test}) {
    const double accuracy = ldts::evaluate(params, ds, split);
    CHECK(accuracy >= 0.0);
    CHECK(accuracy <= 1.0);
    CHECK(accuracy ==
          ldts::evaluate_aggregated(params, aggregated, ds, split));

    // Naive per-node recount.
    const auto nodes = ldts::split_indices(ds, split);
    int correct = 0;
    for (int node : nodes) {
      Eigen::MatrixXd row = aggregated.row(node);
      const auto logits = ldts::forward(params, row);
      int best = 0;
      for (int c = 1; c < logits.cols(); ++c) {
        if (logits(0, c) > logits(0, best)) best = c;
      }
      if (best == ds.labels[node]) ++correct;
    }
    CHECK(accuracy == static_cast<double>(correct) / nodes.size());
  }
}

TEST_CASE("evaluate ties break toward the lowest class index") {
  ldts::Dataset ds;
  ds.features.resize(2, 1);
  ds.features << 1.0, 1.0;
  ds.labels = {0, 1};
  ds.class_count = 2;
  ds.split = {ldts::Split::Train, ldts::Split::Train};

  // Zero weights force identical (tied) logits for both classes.
  ldts::ModelParams zero;
  zero.w1 = Eigen::MatrixXd::Zero(2, 1);
  zero.b1 = Eigen::VectorXd::Zero(2);
  zero.w2 = Eigen::MatrixXd::Zero(2, 2);
  zero.b2 = Eigen::VectorXd::Zero(2);
  CHECK(ldts::evaluate(zero, ds, ldts::Split::Train) == 0.5);
  CHECK_THROWS_AS(ldts::evaluate(zero, ds, ldts::Split::Val),
                  ldts::ArgumentError);
}

TEST_CASE("k follows the pacing schedule") {
  ldts::Dataset ds = easy_dataset(1667, 5.0, 0.0, 11);
  // 60% of 1667 -> exactly 1000 train nodes.
  REQUIRE(ldts::split_indices(ds, ldts::Split::Train).size() == 1000);

  ldts::TrainConfig cfg;
  cfg.strategy = ldts::Strategy::LossDecreaseCurriculum;
  cfg.pacing = {0.25, 100, ldts::PacingKind::Linear};
  cfg.max_epochs = 101;
  cfg.patience = 1000;
  cfg.learning_rate = 0.05;
  cfg.seed = 5;
  const auto result = ldts::train(cfg, ds);
  REQUIRE(result.reports.size() == 101);
  CHECK(result.reports[0].sampled_count == 250);
  CHECK(result.reports[50].sampled_count == 625);
  CHECK(result.reports[100].sampled_count == 1000);

  int last = 0;
  for (const auto& report : result.reports) {
    CHECK(report.sampled_count >= last);
    last = report.sampled_count;
  }
}

TEST_CASE("plain training learns an easy dataset") {
  ldts::Dataset ds = easy_dataset(2000, 6.0, 0.0, 29);
  ldts::TrainConfig cfg;
  cfg.strategy = ldts::Strategy::Plain;
  cfg.pacing = {1.0, 1, ldts::PacingKind::Linear};
  cfg.learning_rate = 0.1;
  cfg.max_epochs = 200;
  cfg.patience = 200;
  cfg.seed = 1;
  Capture capture;
  const auto result = ldts::train(cfg, ds, capture.observer());
  REQUIRE(!result.reports.empty());

  const auto aggregated = ldts::aggregate_features(ds);
  double best_train_accuracy = 0.0;
  for (const auto& params : capture.params) {
    best_train_accuracy =
        std::max(best_train_accuracy,
                 ldts::evaluate_aggregated(params, aggregated, ds,
                                           ldts::Split::Train));
  }
  CHECK(best_train_accuracy >= 0.99);
}

TEST_CASE("identical config and seed give identical report streams") {
  ldts::Dataset ds = easy_dataset(400, 3.0, 0.3, 13);
  ldts::TrainConfig cfg;
  cfg.strategy = ldts::Strategy::LossDecreaseCurriculum;
  cfg.pacing = {0.25, 30, ldts::PacingKind::Root};
  cfg.max_epochs = 60;
  cfg.patience = 10;
  cfg.seed = 99;
  const auto a = ldts::train(cfg, ds);
  const auto b = ldts::train(cfg, ds);
  REQUIRE(a.reports.size() == b.reports.size());
  for (std::size_t i = 0; i < a.reports.size(); ++i) {
    CHECK(a.reports[i].sampled_count == b.reports[i].sampled_count);
    CHECK(a.reports[i].sampled_mean_loss == b.reports[i].sampled_mean_loss);
    CHECK(a.reports[i].train_mean_loss == b.reports[i].train_mean_loss);
    CHECK(a.reports[i].val_accuracy == b.reports[i].val_accuracy);
    CHECK(a.reports[i].test_accuracy == b.reports[i].test_accuracy);
  }
  CHECK(a.best_epoch == b.best_epoch);
  CHECK(a.best_val_accuracy == b.best_val_accuracy);
}

TEST_CASE("the distribution replays from stored per-epoch losses") {
  ldts::Dataset ds = easy_dataset(300, 3.0, 0.2, 17);
  ldts::TrainConfig cfg;
  cfg.strategy = ldts::Strategy::LossDecreaseCurriculum;
  cfg.pacing = {0.3, 20, ldts::PacingKind::Linear};
  cfg.max_epochs = 25;
  cfg.patience = 50;
  cfg.seed = 7;
  Capture capture;
  ldts::train(cfg, ds, capture.observer());
  REQUIRE(capture.losses.size() >= 21);

  const int n = static_cast<int>(capture.losses[0].size());
  // Epoch 0: decrease is -loss under the zero initialization.
  {
    std::vector<double> decrease(n);
    for (int i = 0; i < n; ++i) decrease[i] = -capture.losses[0][i];
    const auto expected = ldts::to_probability(decrease);
    CHECK(expected.probabilities == capture.probabilities[0]);
  }
  // Later epochs: decrease is the previous epoch's losses minus this one's.
  for (std::size_t t = 1; t < capture.losses.size(); ++t) {
    std::vector<double> decrease(n);
    for (int i = 0; i < n; ++i) {
      decrease[i] = capture.losses[t - 1][i] - capture.losses[t][i];
    }
    const auto expected = ldts::to_probability(decrease);
    CHECK(expected.probabilities == capture.probabilities[t]);
  }
}

TEST_CASE("an initial fraction of 1 reproduces plain training exactly") {
  ldts::Dataset ds = easy_dataset(500, 3.0, 0.1, 23);

  ldts::TrainConfig plain;
  plain.strategy = ldts::Strategy::Plain;
  plain.pacing = {1.0, 10, ldts::PacingKind::Linear};
  plain.learning_rate = 0.08;
  plain.max_epochs = 50;
  plain.patience = 100;
  plain.seed = 31;

  ldts::TrainConfig curriculum = plain;
  curriculum.strategy = ldts::Strategy::LossDecreaseCurriculum;

  Capture plain_capture;
  Capture curriculum_capture;
  ldts::train(plain, ds, plain_capture.observer());
  ldts::train(curriculum, ds, curriculum_capture.observer());

  REQUIRE(plain_capture.params.size() == 50);
  REQUIRE(curriculum_capture.params.size() == 50);
  for (std::size_t t = 0; t < 50; ++t) {
    CHECK(params_close(plain_capture.params[t], curriculum_capture.params[t],
                       1e-12));
    CHECK(plain_capture.samples[t] == curriculum_capture.samples[t]);
  }
}

TEST_CASE("absloss picks the easiest-k deterministically") {
  ldts::Dataset ds = easy_dataset(200, 3.0, 0.2, 37);
  ldts::TrainConfig cfg;
  cfg.strategy = ldts::Strategy::AbsoluteLossCurriculum;
  cfg.pacing = {0.2, 15, ldts::PacingKind::Linear};
  cfg.max_epochs = 20;
  cfg.patience = 50;
  cfg.seed = 3;
  Capture capture;
  ldts::train(cfg, ds, capture.observer());
  REQUIRE(!capture.samples.empty());

  for (std::size_t t = 0; t < capture.samples.size(); ++t) {
    const auto& losses = capture.losses[t];
    const int k = static_cast<int>(capture.samples[t].size());
    if (k == static_cast<int>(losses.size())) continue;
    CHECK(capture.samples[t] ==
          ldts::easiest_by_absolute_loss(losses, k).indices);
    CHECK(capture.probabilities[t].empty());
  }
}

TEST_CASE("early stopping respects patience after the pacing horizon") {
  ldts::Dataset ds = easy_dataset(300, 6.0, 0.0, 43);
  ldts::TrainConfig cfg;
  cfg.strategy = ldts::Strategy::Plain;
  cfg.pacing = {0.25, 10, ldts::PacingKind::Linear};
  cfg.max_epochs = 5000;
  cfg.patience = 5;
  cfg.learning_rate = 0.05;
  cfg.seed = 8;
  const auto result = ldts::train(cfg, ds);
  // Stopped well before the budget, and only after the horizon.
  CHECK(result.reports.size() < 5000);
  CHECK(static_cast<int>(result.reports.size()) > 10);
  CHECK(result.best_epoch >= 0);

  // Reported parameters come from the best-validation epoch.
  const double reported =
      ldts::evaluate(result.params, ds, ldts::Split::Val);
  CHECK(reported == result.best_val_accuracy);
}

TEST_CASE("invalid train configs are rejected") {
  ldts::Dataset ds = easy_dataset(100, 3.0, 0.0, 5);
  ldts::TrainConfig cfg;
  cfg.strategy = ldts::Strategy::LossDecreaseCurriculum;
  cfg.pacing = {0.25, 100, ldts::PacingKind::Linear};
  cfg.max_epochs = 50;  // below the pacing horizon
  CHECK_THROWS_AS(ldts::train(cfg, ds), ldts::ConfigError);

  cfg.max_epochs = 150;
  cfg.patience = 0;
  CHECK_THROWS_AS(ldts::train(cfg, ds), ldts::ConfigError);

  cfg.patience = 10;
  cfg.learning_rate = -1.0;
  CHECK_THROWS_AS(ldts::train(cfg, ds), ldts::ConfigError);

  // Plain ignores the horizon cap.
  cfg.learning_rate = 0.1;
  cfg.strategy = ldts::Strategy::Plain;
  cfg.max_epochs = 50;
  cfg.patience = 5;
  CHECK_NOTHROW(ldts::train(cfg, ds));
}

TEST_CASE("divergence aborts with the reports collected so far") {
  ldts::Dataset ds = easy_dataset(100, 6.0, 0.0, 51);
  ldts::TrainConfig cfg;
  cfg.strategy = ldts::Strategy::Plain;
  cfg.pacing = {1.0, 1, ldts::PacingKind::Linear};
  cfg.learning_rate = 1e12;  // guaranteed blowup
  cfg.max_epochs = 50;
  cfg.patience = 50;
  cfg.seed = 2;
  const auto result = ldts::train(cfg, ds);
  CHECK(result.diverged);
  CHECK(result.reports.size() < 50);
}

TEST_CASE("strategy names round-trip") {
  for (ldts::Strategy s :
       {ldts::Strategy::Plain, ldts::Strategy::AbsoluteLossCurriculum,
        ldts::Strategy::LossDecreaseCurriculum}) {
    CHECK(ldts::strategy_from_string(ldts::to_string(s)) == s);
  }
  CHECK_THROWS_AS(ldts::strategy_from_string("sgd"), ldts::ArgumentError);
}
