#include "ldts/difficulty.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ldts/error.hpp"

namespace ldts {

namespace {

void require_finite(const std::vector<double>& values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw NumericError(std::string(what) + ": non-finite entry");
    }
  }
}

}  // namespace

std::vector<double> loss_decrease(const LossRecord& record) {
  if (record.previous.empty() || record.current.empty()) {
    throw ShapeError("loss_decrease: empty loss vector");
  }
  if (record.previous.size() != record.current.size()) {
    throw ShapeError("loss_decrease: previous has " +
                     std::to_string(record.previous.size()) +
                     " entries, current has " +
                     std::to_string(record.current.size()));
  }
  require_finite(record.previous, "loss_decrease(previous)");
  require_finite(record.current, "loss_decrease(current)");

  std::vector<double> decrease(record.current.size());
  for (std::size_t i = 0; i < decrease.size(); ++i) {
    decrease[i] = record.previous[i] - record.current[i];
  }
  return decrease;
}

SelectionDistribution to_probability(const std::vector<double>& decrease) {
  if (decrease.empty()) {
    throw ShapeError("to_probability: empty decrease vector");
  }
  require_finite(decrease, "to_probability");

  const double peak = *std::max_element(decrease.begin(), decrease.end());

  SelectionDistribution dist;
  dist.probabilities.resize(decrease.size());
  dist.log_probabilities.resize(decrease.size());

  double total = 0.0;
  for (std::size_t i = 0; i < decrease.size(); ++i) {
    dist.probabilities[i] = std::exp(decrease[i] - peak);
    total += dist.probabilities[i];
  }
  const double log_total = std::log(total);
  for (std::size_t i = 0; i < decrease.size(); ++i) {
    dist.probabilities[i] /= total;
    dist.log_probabilities[i] = (decrease[i] - peak) - log_total;
  }
  return dist;
}

SampleSet easiest_by_absolute_loss(const std::vector<double>& current_losses,
                                   int k) {
  const int n = static_cast<int>(current_losses.size());
  if (k < 1 || k > n) {
    throw ArgumentError("easiest_by_absolute_loss: k = " + std::to_string(k) +
                        " out of range [1, " + std::to_string(n) + "]");
  }
  require_finite(current_losses, "easiest_by_absolute_loss");

  std::vector<int> order(current_losses.size());
  std::iota(order.begin(), order.end(), 0);
  std::partial_sort(order.begin(), order.begin() + k, order.end(),
                    [&](int a, int b) {
                      if (current_losses[a] != current_losses[b]) {
                        return current_losses[a] < current_losses[b];
                      }
                      return a < b;
                    });
  SampleSet sample;
  sample.indices.assign(order.begin(), order.begin() + k);
  std::sort(sample.indices.begin(), sample.indices.end());
  return sample;
}

}  // namespace ldts
