#pragma once

#include <vector>

#include "ldts/sample_set.hpp"

namespace ldts {

// Per-node losses for the current epoch next to the previous epoch's values.
// At epoch 0 the previous vector is the all-zero initialization.
struct LossRecord {
  std::vector<double> previous;
  std::vector<double> current;
  int epoch = 0;
};

// Softmax of the loss-decrease vector. Probabilities are kept in linear and
// log form; the sampler consumes the log form so tiny probabilities never
// truncate to zero before noise is added.
struct SelectionDistribution {
  std::vector<double> probabilities;
  std::vector<double> log_probabilities;

  int size() const { return static_cast<int>(probabilities.size()); }
};

// Elementwise previous - current. Larger values mark easier nodes: a node
// whose loss fell a lot in one update was easy to learn.
std::vector<double> loss_decrease(const LossRecord& record);

// Stabilized softmax (max subtraction) of the decrease vector. Strictly
// positive entries summing to 1; order-preserving in the input.
SelectionDistribution to_probability(const std::vector<double>& decrease);

// Indices of the k smallest current losses, ties broken toward the lower
// index. The ranked-by-absolute-loss baseline selector.
SampleSet easiest_by_absolute_loss(const std::vector<double>& current_losses,
                                   int k);

}  // namespace ldts
