#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace ldts {

enum class Split { Train, Val, Test };

Split split_from_string(std::string_view name);
std::string_view to_string(Split split);

// One typed relation: a set of auxiliary nodes with their own raw features
// and the (target, aux) edge list connecting them to target nodes.
struct Relation {
  std::string name;
  Eigen::MatrixXd aux_features;                        // aux nodes x d
  std::vector<std::pair<std::int32_t, std::int32_t>> edges;  // (target, aux)
};

// A node-classification dataset over one target node type plus any number of
// typed auxiliary relations. Labels, split assignment, and (for synthetic
// data) noise flags all index target nodes.
struct Dataset {
  Eigen::MatrixXd features;        // target nodes x d
  std::vector<int> labels;         // values in [0, class_count)
  int class_count = 0;
  std::vector<Relation> relations;
  std::vector<Split> split;        // per target node
  std::vector<std::uint8_t> noisy_flags;  // empty, or one flag per target node

  int node_count() const { return static_cast<int>(features.rows()); }
  int feature_dim() const { return static_cast<int>(features.cols()); }
  bool has_noise_flags() const { return !noisy_flags.empty(); }
};

// Generator knobs for the synthetic heterogeneous dataset.
struct SynthConfig {
  int node_count = 2000;
  int class_count = 4;
  int feature_dim = 16;
  double cluster_separation = 3.0;
  double noise_fraction = 0.0;  // share of train labels corrupted
  int aux_type_count = 1;
  int edges_per_node = 5;
  std::uint64_t seed = 0;
};

void validate(const SynthConfig& cfg);
void validate(const Dataset& dataset);

// Class-conditional Gaussian target features, class-homophilous typed edges
// to auxiliary nodes, a 60/20/20 random split, and noise_fraction of the
// train labels reassigned to a uniformly random different class (flagged in
// noisy_flags). Deterministic given the seed.
Dataset generate_synthetic(const SynthConfig& cfg);

// Row per target node: raw features, then for each relation the mean of the
// raw features of its neighbors under that relation (zero block when the
// node has no neighbors there). Output is n x d*(1 + #relations).
Eigen::MatrixXd aggregate_features(const Dataset& dataset);

// One directory per dataset, plain CSV: features.csv, labels.csv, split.csv,
// flags.csv (only when flags exist), and per relation edges_<name>.csv plus
// aux_features_<name>.csv. load(save(ds)) reproduces ds exactly.
void save_dataset(const Dataset& dataset, const std::filesystem::path& dir);
Dataset load_dataset(const std::filesystem::path& dir);

std::vector<int> split_indices(const Dataset& dataset, Split split);

}  // namespace ldts
