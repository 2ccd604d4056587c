// Python bindings for the ldts core: pacing schedules, difficulty signals,
// weighted sampling, the MLP, dataset generation/IO, and the training loops.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cmath>
#include <string>
#include <vector>

#include "ldts/compare.hpp"
#include "ldts/data.hpp"
#include "ldts/difficulty.hpp"
#include "ldts/error.hpp"
#include "ldts/nn.hpp"
#include "ldts/pacing.hpp"
#include "ldts/sampler.hpp"
#include "ldts/trainer.hpp"

namespace py = pybind11;

namespace {

ldts::PacingConfig make_pacing(const std::string& kind, double lambda0,
                               int epochs_to_full) {
  return {lambda0, epochs_to_full, ldts::pacing_kind_from_string(kind)};
}

ldts::SelectionDistribution distribution_from_probabilities(
    const std::vector<double>& probabilities) {
  if (probabilities.empty()) {
    throw ldts::ShapeError("probabilities must be non-empty");
  }
  double total = 0.0;
  ldts::SelectionDistribution dist;
  dist.probabilities = probabilities;
  dist.log_probabilities.reserve(probabilities.size());
  for (double p : probabilities) {
    if (!(p > 0.0) || !std::isfinite(p)) {
      throw ldts::ArgumentError("probabilities must be finite and positive");
    }
    dist.log_probabilities.push_back(std::log(p));
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-6) {
    throw ldts::ArgumentError("probabilities must sum to 1");
  }
  return dist;
}

std::vector<std::string> split_names(const ldts::Dataset& ds) {
  std::vector<std::string> names;
  names.reserve(ds.split.size());
  for (ldts::Split s : ds.split) names.emplace_back(ldts::to_string(s));
  return names;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Loss-decrease-aware curriculum training toolkit";

  py::register_exception<ldts::ConfigError>(m, "ConfigError",
                                            PyExc_ValueError);
  py::register_exception<ldts::ArgumentError>(m, "ArgumentError",
                                              PyExc_ValueError);
  py::register_exception<ldts::ShapeError>(m, "ShapeError", PyExc_ValueError);
  py::register_exception<ldts::DataError>(m, "DataError", PyExc_ValueError);

  // --- pacing ---------------------------------------------------------------
  m.def(
      "pacing_fraction",
      [](const std::string& kind, double lambda0, int epochs_to_full,
         int epoch) {
        return ldts::pacing_fraction(make_pacing(kind, lambda0, epochs_to_full),
                                     epoch);
      },
      py::arg("kind"), py::arg("lambda0"), py::arg("epochs_to_full"),
      py::arg("epoch"),
      "Scheduled training fraction at one epoch (linear, root, or geom).");

  m.def(
      "pacing_table",
      [](const std::string& kind, double lambda0, int epochs_to_full) {
        const auto cfg = make_pacing(kind, lambda0, epochs_to_full);
        std::vector<double> table;
        table.reserve(epochs_to_full + 1);
        for (int t = 0; t <= epochs_to_full; ++t) {
          table.push_back(ldts::pacing_fraction(cfg, t));
        }
        return table;
      },
      py::arg("kind"), py::arg("lambda0"), py::arg("epochs_to_full"),
      "Fractions for epochs 0..epochs_to_full inclusive.");

  m.def("sample_count", &ldts::sample_count, py::arg("node_count"),
        py::arg("fraction"),
        "floor(node_count * fraction), clamped into [1, node_count].");

  // --- difficulty -----------------------------------------------------------
  m.def(
      "loss_decrease",
      [](const std::vector<double>& previous,
         const std::vector<double>& current, int epoch) {
        return ldts::loss_decrease({previous, current, epoch});
      },
      py::arg("previous"), py::arg("current"), py::arg("epoch") = 0,
      "Elementwise previous - current; larger means easier.");

  m.def(
      "to_probability",
      [](const std::vector<double>& decrease) {
        return ldts::to_probability(decrease).probabilities;
      },
      py::arg("decrease"),
      "Stabilized softmax of the decrease vector.");

  m.def(
      "easiest_by_absolute_loss",
      [](const std::vector<double>& losses, int k) {
        return ldts::easiest_by_absolute_loss(losses, k).indices;
      },
      py::arg("losses"), py::arg("k"),
      "Indices of the k smallest losses, lowest index first on ties.");

  // --- sampler ----------------------------------------------------------
  m.def(
      "sample_without_replacement",
      [](const std::vector<double>& probabilities, int k,
         std::uint64_t seed) {
        auto dist = distribution_from_probabilities(probabilities);
        ldts::RngState rng(seed);
        return ldts::sample_without_replacement(dist, k, rng).indices;
      },
      py::arg("probabilities"), py::arg("k"), py::arg("seed"),
      "Gumbel-top-k draw of k distinct indices, proportional to the "
      "probabilities, deterministic per seed.");

  // --- data -------------------------------------------------------------
  py::class_<ldts::Relation>(m, "Relation")
      .def_readonly("name", &ldts::Relation::name)
      .def_readonly("aux_features", &ldts::Relation::aux_features)
      .def_readonly("edges", &ldts::Relation::edges);

  py::class_<ldts::Dataset>(m, "Dataset")
      .def_readonly("features", &ldts::Dataset::features)
      .def_readonly("labels", &ldts::Dataset::labels)
      .def_readonly("class_count", &ldts::Dataset::class_count)
      .def_readonly("relations", &ldts::Dataset::relations)
      .def_readonly("noisy_flags", &ldts::Dataset::noisy_flags)
      .def_property_readonly("split", &split_names)
      .def("node_count", &ldts::Dataset::node_count)
      .def("feature_dim", &ldts::Dataset::feature_dim)
      .def(
          "split_indices",
          [](const ldts::Dataset& ds, const std::string& split) {
            return ldts::split_indices(ds, ldts::split_from_string(split));
          },
          py::arg("split"))
      .def("save",
           [](const ldts::Dataset& ds, const std::filesystem::path& dir) {
             ldts::save_dataset(ds, dir);
           },
           py::arg("directory"))
      .def_static("load", &ldts::load_dataset, py::arg("directory"));

  m.def(
      "generate_synthetic",
      [](int n, int classes, int dim, double separation, double noise,
         int aux_types, int edges_per_node, std::uint64_t seed) {
        return ldts::generate_synthetic(
            {n, classes, dim, separation, noise, aux_types, edges_per_node,
             seed});
      },
      py::arg("n") = 2000, py::arg("classes") = 4, py::arg("dim") = 16,
      py::arg("separation") = 3.0, py::arg("noise") = 0.0,
      py::arg("aux_types") = 1, py::arg("edges_per_node") = 5,
      py::arg("seed") = 0,
      "Synthetic heterogeneous dataset with planted train-label noise.");

  m.def("aggregate_features", &ldts::aggregate_features, py::arg("dataset"),
        "Raw features concatenated with per-relation neighbor means.");

  // --- model ----------------------------------------------------------
  py::class_<ldts::ModelParams>(m, "ModelParams")
      .def_readonly("w1", &ldts::ModelParams::w1)
      .def_readonly("b1", &ldts::ModelParams::b1)
      .def_readonly("w2", &ldts::ModelParams::w2)
      .def_readonly("b2", &ldts::ModelParams::b2)
      .def("input_dim", &ldts::ModelParams::input_dim)
      .def("hidden_dim", &ldts::ModelParams::hidden_dim)
      .def("class_count", &ldts::ModelParams::class_count)
      .def("save",
           [](const ldts::ModelParams& params,
              const std::filesystem::path& file) {
             ldts::save_checkpoint(params, file);
           },
           py::arg("file"))
      .def_static("load", &ldts::load_checkpoint, py::arg("file"));

  // --- trainer ----------------------------------------------------------
  py::class_<ldts::EpochReport>(m, "EpochReport")
      .def_readonly("epoch", &ldts::EpochReport::epoch)
      .def_readonly("sampled_count", &ldts::EpochReport::sampled_count)
      .def_readonly("sampled_mean_loss", &ldts::EpochReport::sampled_mean_loss)
      .def_readonly("train_mean_loss", &ldts::EpochReport::train_mean_loss)
      .def_readonly("val_accuracy", &ldts::EpochReport::val_accuracy)
      .def_readonly("test_accuracy", &ldts::EpochReport::test_accuracy)
      .def_readonly("clean_sample_fraction",
                    &ldts::EpochReport::clean_sample_fraction)
      .def_readonly("mean_prob_clean", &ldts::EpochReport::mean_prob_clean)
      .def_readonly("mean_prob_noisy", &ldts::EpochReport::mean_prob_noisy);

  py::class_<ldts::TrainResult>(m, "TrainResult")
      .def_readonly("params", &ldts::TrainResult::params)
      .def_readonly("reports", &ldts::TrainResult::reports)
      .def_readonly("best_epoch", &ldts::TrainResult::best_epoch)
      .def_readonly("best_val_accuracy", &ldts::TrainResult::best_val_accuracy)
      .def_readonly("test_at_best_val", &ldts::TrainResult::test_at_best_val)
      .def_readonly("diverged", &ldts::TrainResult::diverged);

  m.def(
      "train",
      [](const ldts::Dataset& dataset, const std::string& strategy,
         const std::string& kind, double lambda0, int epochs_to_full,
         double lr, int max_epochs, int patience, int hidden_dim,
         std::uint64_t seed) {
        ldts::TrainConfig cfg;
        cfg.strategy = ldts::strategy_from_string(strategy);
        cfg.pacing = make_pacing(kind, lambda0, epochs_to_full);
        cfg.learning_rate = lr;
        cfg.max_epochs = max_epochs;
        cfg.patience = patience;
        cfg.hidden_dim = hidden_dim;
        cfg.seed = seed;
        return ldts::train(cfg, dataset);
      },
      py::arg("dataset"), py::arg("strategy") = "ldts",
      py::arg("kind") = "linear", py::arg("lambda0") = 0.25,
      py::arg("epochs_to_full") = 100, py::arg("lr") = 0.1,
      py::arg("max_epochs") = 400, py::arg("patience") = 20,
      py::arg("hidden_dim") = 32, py::arg("seed") = 0,
      py::call_guard<py::gil_scoped_release>(),
      "Run one training strategy (plain, absloss, or ldts) end to end.");

  m.def(
      "evaluate",
      [](const ldts::ModelParams& params, const ldts::Dataset& dataset,
         const std::string& split) {
        return ldts::evaluate(params, dataset,
                              ldts::split_from_string(split));
      },
      py::arg("params"), py::arg("dataset"), py::arg("split"),
      "Accuracy of the model on one split of the dataset.");
}
