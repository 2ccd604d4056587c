#pragma once

// Test-only fixtures and independent oracles shared by the unit and
// acceptance suites. Nothing here may call back into the code paths it
// checks beyond plain forward/loss evaluation.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "ldts/data.hpp"
#include "ldts/nn.hpp"
#include "ldts/rng.hpp"
#include "ldts/sample_set.hpp"

namespace ldts::test {

struct Instance {
  ldts::ModelParams params;
  Eigen::MatrixXd features;
  std::vector<int> labels;
};

inline Instance random_instance(int n, int dim, int hidden, int classes,
                                std::uint64_t seed) {
  ldts::RngState rng(seed);
  Instance inst;
  inst.params = ldts::init_params(dim, hidden, classes, rng);
  inst.features.resize(n, dim);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < dim; ++j) inst.features(i, j) = rng.normal();
  }
  inst.labels.resize(n);
  for (int i = 0; i < n; ++i) inst.labels[i] = rng.uniform_int(classes);
  return inst;
}

inline ldts::SampleSet all_nodes(int n) {
  ldts::SampleSet sample;
  for (int i = 0; i < n; ++i) sample.indices.push_back(i);
  return sample;
}

inline double masked_mean_loss(const ldts::ModelParams& params,
                               const Instance& inst,
                               const ldts::SampleSet& sample) {
  const auto losses =
      ldts::per_sample_loss(ldts::forward(params, inst.features), inst.labels);
  double total = 0.0;
  for (int i : sample.indices) total += losses[static_cast<std::size_t>(i)];
  return total / sample.size();
}

// Central finite differences over every parameter coordinate.
inline ldts::ParamGradients numeric_gradients(const Instance& inst,
                                              const ldts::SampleSet& sample,
                                              double h) {
  ldts::ParamGradients grads = inst.params;
  auto probe = [&](auto&& get) {
    ldts::ModelParams plus = inst.params;
    ldts::ModelParams minus = inst.params;
    get(plus) += h;
    get(minus) -= h;
    return (masked_mean_loss(plus, inst, sample) -
            masked_mean_loss(minus, inst, sample)) /
           (2.0 * h);
  };
  for (Eigen::Index r = 0; r < grads.w1.rows(); ++r) {
    for (Eigen::Index c = 0; c < grads.w1.cols(); ++c) {
      grads.w1(r, c) =
          probe([=](ldts::ModelParams& p) -> double& { return p.w1(r, c); });
    }
  }
  for (Eigen::Index i = 0; i < grads.b1.size(); ++i) {
    grads.b1(i) =
        probe([=](ldts::ModelParams& p) -> double& { return p.b1(i); });
  }
  for (Eigen::Index r = 0; r < grads.w2.rows(); ++r) {
    for (Eigen::Index c = 0; c < grads.w2.cols(); ++c) {
      grads.w2(r, c) =
          probe([=](ldts::ModelParams& p) -> double& { return p.w2(r, c); });
    }
  }
  for (Eigen::Index i = 0; i < grads.b2.size(); ++i) {
    grads.b2(i) =
        probe([=](ldts::ModelParams& p) -> double& { return p.b2(i); });
  }
  return grads;
}

// Relative error with a unit floor, coordinatewise maximum.
inline double max_relative_error(const ldts::ParamGradients& a,
                                 const ldts::ParamGradients& b) {
  double worst = 0.0;
  auto update = [&](double x, double y) {
    const double scale = std::max({1.0, std::abs(x), std::abs(y)});
    worst = std::max(worst, std::abs(x - y) / scale);
  };
  for (Eigen::Index r = 0; r < a.w1.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.w1.cols(); ++c) update(a.w1(r, c), b.w1(r, c));
  }
  for (Eigen::Index i = 0; i < a.b1.size(); ++i) update(a.b1(i), b.b1(i));
  for (Eigen::Index r = 0; r < a.w2.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.w2.cols(); ++c) update(a.w2(r, c), b.w2(r, c));
  }
  for (Eigen::Index i = 0; i < a.b2.size(); ++i) update(a.b2(i), b.b2(i));
  return worst;
}

inline ldts::Dataset easy_dataset(int n, double separation, double noise,
                                  std::uint64_t seed, int classes = 4,
                                  int dim = 16) {
  ldts::SynthConfig cfg;
  cfg.node_count = n;
  cfg.class_count = classes;
  cfg.feature_dim = dim;
  cfg.cluster_separation = separation;
  cfg.noise_fraction = noise;
  cfg.seed = seed;
  return ldts::generate_synthetic(cfg);
}

}  // namespace ldts::test
