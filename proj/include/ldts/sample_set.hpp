#pragma once

#include <vector>

namespace ldts {

// Distinct node indices, sorted ascending: the nodes whose mean loss the
// trainer backpropagates in one epoch.
struct SampleSet {
  std::vector<int> indices;

  int size() const { return static_cast<int>(indices.size()); }
  bool empty() const { return indices.empty(); }
};

}  // namespace ldts
