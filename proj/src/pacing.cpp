#include "ldts/pacing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ldts/error.hpp"

namespace ldts {

void validate(const PacingConfig& cfg) {
  // !(x > 0) also rejects NaN.
  if (!(cfg.initial_fraction > 0.0) || cfg.initial_fraction > 1.0) {
    throw ConfigError("pacing: initial fraction must be in (0, 1], got " +
                      std::to_string(cfg.initial_fraction));
  }
  if (cfg.epochs_to_full < 1) {
    throw ConfigError("pacing: epochs_to_full must be >= 1, got " +
                      std::to_string(cfg.epochs_to_full));
  }
}

double pacing_fraction(const PacingConfig& cfg, int epoch) {
  validate(cfg);
  if (epoch < 0) {
    throw ArgumentError("pacing_fraction: epoch must be non-negative, got " +
                        std::to_string(epoch));
  }
  // The boundary values are pinned exactly; the curves apply strictly inside.
  if (epoch >= cfg.epochs_to_full) return 1.0;
  if (epoch == 0) return cfg.initial_fraction;

  const double lam = cfg.initial_fraction;
  const double progress =
      static_cast<double>(epoch) / static_cast<double>(cfg.epochs_to_full);
  double value = 1.0;
  switch (cfg.kind) {
    case PacingKind::Linear:
      value = lam + (1.0 - lam) * progress;
      break;
    case PacingKind::Root:
      value = std::sqrt(lam * lam + (1.0 - lam * lam) * progress);
      break;
    case PacingKind::Geometric: {
      const double log_lam = std::log2(lam);
      value = std::exp2(log_lam - log_lam * progress);
      break;
    }
  }
  return std::min(1.0, value);
}

int sample_count(int node_count, double fraction) {
  if (node_count <= 0) {
    throw ArgumentError("sample_count: empty training set (node_count = " +
                        std::to_string(node_count) + ")");
  }
  if (!(fraction > 0.0) || fraction > 1.0) {
    throw ArgumentError("sample_count: fraction must be in (0, 1], got " +
                        std::to_string(fraction));
  }
  const int k = static_cast<int>(
      std::floor(static_cast<double>(node_count) * fraction));
  return std::clamp(k, 1, node_count);
}

PacingKind pacing_kind_from_string(std::string_view name) {
  if (name == "linear") return PacingKind::Linear;
  if (name == "root") return PacingKind::Root;
  if (name == "geom") return PacingKind::Geometric;
  throw ArgumentError("unknown pacing kind '" + std::string(name) +
                      "' (expected linear, root, or geom)");
}

std::string_view to_string(PacingKind kind) {
  switch (kind) {
    case PacingKind::Linear:
      return "linear";
    case PacingKind::Root:
      return "root";
    case PacingKind::Geometric:
      return "geom";
  }
  return "linear";
}

}  // namespace ldts
