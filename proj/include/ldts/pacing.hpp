#pragma once

#include <string_view>

namespace ldts {

enum class PacingKind { Linear, Root, Geometric };

// Training-schedule configuration. initial_fraction is the share of training
// nodes scheduled at epoch 0; epochs_to_full is the epoch at which the
// schedule first reaches the whole set.
struct PacingConfig {
  double initial_fraction = 0.25;
  int epochs_to_full = 100;
  PacingKind kind = PacingKind::Linear;
};

// Throws ConfigError unless 0 < initial_fraction <= 1 and epochs_to_full >= 1.
void validate(const PacingConfig& cfg);

// Scheduled fraction at the given epoch: exactly initial_fraction at epoch 0,
// exactly 1 for every epoch >= epochs_to_full, and non-decreasing in between
// along the configured curve.
double pacing_fraction(const PacingConfig& cfg, int epoch);

// Nodes drawn from a training set of node_count at the given fraction:
// floor(node_count * fraction) clamped into [1, node_count].
int sample_count(int node_count, double fraction);

PacingKind pacing_kind_from_string(std::string_view name);
std::string_view to_string(PacingKind kind);

}  // namespace ldts
