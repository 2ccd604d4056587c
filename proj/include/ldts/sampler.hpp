#pragma once

#include "ldts/difficulty.hpp"
#include "ldts/rng.hpp"
#include "ldts/sample_set.hpp"

namespace ldts {

// Draw k distinct indices with inclusion proportional to the distribution,
// without replacement: independent Gumbel noise is added to each
// log-probability and the k largest keys win. Equivalent to sequential
// probability-proportional draws without replacement; O(n log k).
SampleSet sample_without_replacement(const SelectionDistribution& dist, int k,
                                     RngState& rng);

}  // namespace ldts
