#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <vector>

#include "ldts/rng.hpp"
#include "ldts/sample_set.hpp"

namespace ldts {

// One-hidden-layer ReLU classifier over precomputed node features. Doubles
// throughout so finite-difference checks stay tight.
struct ModelParams {
  Eigen::MatrixXd w1;  // hidden x input
  Eigen::VectorXd b1;  // hidden
  Eigen::MatrixXd w2;  // classes x hidden
  Eigen::VectorXd b2;  // classes

  int input_dim() const { return static_cast<int>(w1.cols()); }
  int hidden_dim() const { return static_cast<int>(w1.rows()); }
  int class_count() const { return static_cast<int>(w2.rows()); }
};

// Gradients share the parameter layout.
using ParamGradients = ModelParams;

// Row i holds the class scores of node i.
using Logits = Eigen::MatrixXd;

// Uniform [-a, a] weights with a = sqrt(6 / (fan_in + fan_out)) per layer,
// zero biases. Deterministic given the generator state.
ModelParams init_params(int input_dim, int hidden_dim, int class_count,
                        RngState& rng);

// logits = w2 * relu(w1 * x + b1) + b2 per row.
Logits forward(const ModelParams& params, const Eigen::MatrixXd& features);

// Per-node cross entropy in nats, no reduction: -log softmax(row)[label].
std::vector<double> per_sample_loss(const Logits& logits,
                                    const std::vector<int>& labels);

// Gradient of mean_{i in sample} loss_i with respect to the parameters.
// Nodes outside the sample contribute exactly zero.
ParamGradients masked_backward(const ModelParams& params,
                               const Eigen::MatrixXd& features,
                               const std::vector<int>& labels,
                               const SampleSet& sample);

// params - learning_rate * grads, elementwise.
ModelParams sgd_step(const ModelParams& params, const ParamGradients& grads,
                     double learning_rate);

// Flat little-endian checkpoint: "LDTS", version u32, dimension u32s
// (w1 rows, w1 cols, w2 rows, w2 cols), then w1, b1, w2, b2 row-major f64.
void save_checkpoint(const ModelParams& params,
                     const std::filesystem::path& file);
ModelParams load_checkpoint(const std::filesystem::path& file);

}  // namespace ldts
