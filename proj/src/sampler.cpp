#include "ldts/sampler.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "ldts/error.hpp"

namespace ldts {

SampleSet sample_without_replacement(const SelectionDistribution& dist, int k,
                                     RngState& rng) {
  const int n = dist.size();
  if (n == 0) {
    throw ShapeError("sample_without_replacement: empty distribution");
  }
  if (dist.log_probabilities.size() != dist.probabilities.size()) {
    throw ShapeError(
        "sample_without_replacement: probability and log-probability lengths "
        "differ");
  }
  if (k < 1 || k > n) {
    throw ArgumentError("sample_without_replacement: k = " +
                        std::to_string(k) + " out of range [1, " +
                        std::to_string(n) + "]");
  }

  std::vector<std::pair<double, int>> keys;
  keys.reserve(n);
  for (int i = 0; i < n; ++i) {
    keys.emplace_back(dist.log_probabilities[i] + rng.gumbel(), i);
  }
  // Largest keys first; index breaks exact key ties deterministically.
  std::partial_sort(keys.begin(), keys.begin() + k, keys.end(),
                    [](const auto& a, const auto& b) {
                      if (a.first != b.first) return a.first > b.first;
                      return a.second < b.second;
                    });

  SampleSet sample;
  sample.indices.reserve(k);
  for (int i = 0; i < k; ++i) sample.indices.push_back(keys[i].second);
  std::sort(sample.indices.begin(), sample.indices.end());
  return sample;
}

}  // namespace ldts
