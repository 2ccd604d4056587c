#include "ldts/data.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "csv.hpp"
#include "ldts/error.hpp"
#include "ldts/rng.hpp"

namespace ldts {

namespace {

namespace fs = std::filesystem;

// Share of targets that connect to a same-class auxiliary node per draw.
constexpr double kHomophily = 0.8;

Eigen::MatrixXd class_means(int class_count, int dim, double separation,
                            RngState& rng) {
  Eigen::MatrixXd means(class_count, dim);
  for (int c = 0; c < class_count; ++c) {
    Eigen::RowVectorXd direction(dim);
    for (int j = 0; j < dim; ++j) direction(j) = rng.normal();
    const double norm = direction.norm();
    if (norm < 1e-12) {
      direction.setZero();
      direction(c % dim) = 1.0;
    } else {
      direction /= norm;
    }
    means.row(c) = separation * direction;
  }
  return means;
}

std::vector<int> random_permutation(int n, RngState& rng) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    std::swap(perm[i], perm[rng.uniform_int(i + 1)]);
  }
  return perm;
}

// Natural order for relN-style names: shorter names first, then lexicographic.
bool relation_name_less(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

Split split_from_string(std::string_view name) {
  if (name == "train") return Split::Train;
  if (name == "val") return Split::Val;
  if (name == "test") return Split::Test;
  throw ArgumentError("unknown split '" + std::string(name) +
                      "' (expected train, val, or test)");
}

std::string_view to_string(Split split) {
  switch (split) {
    case Split::Train:
      return "train";
    case Split::Val:
      return "val";
    case Split::Test:
      return "test";
  }
  return "train";
}

void validate(const SynthConfig& cfg) {
  if (cfg.class_count < 2) {
    throw ConfigError("synth: class_count must be >= 2, got " +
                      std::to_string(cfg.class_count));
  }
  if (cfg.node_count < cfg.class_count) {
    throw ConfigError("synth: node_count must be >= class_count, got " +
                      std::to_string(cfg.node_count));
  }
  if (cfg.feature_dim < 1) {
    throw ConfigError("synth: feature_dim must be >= 1");
  }
  if (!(cfg.cluster_separation > 0.0)) {
    throw ConfigError("synth: cluster_separation must be positive");
  }
  if (!(cfg.noise_fraction >= 0.0) || cfg.noise_fraction >= 1.0) {
    throw ConfigError("synth: noise_fraction must be in [0, 1), got " +
                      std::to_string(cfg.noise_fraction));
  }
  if (cfg.aux_type_count < 0) {
    throw ConfigError("synth: aux_type_count must be >= 0");
  }
  if (cfg.edges_per_node < 1) {
    throw ConfigError("synth: edges_per_node must be >= 1");
  }
}

void validate(const Dataset& dataset) {
  const int n = dataset.node_count();
  if (n < 1) throw DataError("dataset: no target nodes");
  if (static_cast<int>(dataset.labels.size()) != n) {
    throw DataError("dataset: " + std::to_string(dataset.labels.size()) +
                    " labels for " + std::to_string(n) + " nodes");
  }
  if (static_cast<int>(dataset.split.size()) != n) {
    throw DataError("dataset: split assignment does not cover all nodes");
  }
  if (!dataset.noisy_flags.empty() &&
      static_cast<int>(dataset.noisy_flags.size()) != n) {
    throw DataError("dataset: noisy_flags length mismatch");
  }
  if (dataset.class_count < 1) throw DataError("dataset: class_count < 1");
  for (int label : dataset.labels) {
    if (label < 0 || label >= dataset.class_count) {
      throw DataError("dataset: label " + std::to_string(label) +
                      " out of range [0, " +
                      std::to_string(dataset.class_count) + ")");
    }
  }
  bool has_train = false;
  for (Split s : dataset.split) has_train = has_train || s == Split::Train;
  if (!has_train) throw DataError("dataset: train split is empty");
  for (const Relation& rel : dataset.relations) {
    if (rel.aux_features.cols() != dataset.features.cols()) {
      throw DataError("dataset: relation " + rel.name +
                      " aux feature width differs from target features");
    }
    for (const auto& [target, aux] : rel.edges) {
      if (target < 0 || target >= n || aux < 0 ||
          aux >= rel.aux_features.rows()) {
        throw DataError("dataset: relation " + rel.name +
                        " has an edge with an invalid endpoint");
      }
    }
  }
}

Dataset generate_synthetic(const SynthConfig& cfg) {
  validate(cfg);
  RngState rng(cfg.seed);

  const int n = cfg.node_count;
  const int classes = cfg.class_count;
  const int dim = cfg.feature_dim;

  const Eigen::MatrixXd means =
      class_means(classes, dim, cfg.cluster_separation, rng);

  Dataset ds;
  ds.class_count = classes;
  ds.labels.resize(n);
  for (int i = 0; i < n; ++i) ds.labels[i] = i % classes;

  ds.features.resize(n, dim);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < dim; ++j) {
      ds.features(i, j) = means(ds.labels[i], j) + rng.normal();
    }
  }

  // Auxiliary node sets, one relation per type; balanced latent classes so
  // homophilous edges carry class signal into the aggregated blocks.
  int aux_count = std::max(2 * classes, n / 10);
  aux_count += (classes - aux_count % classes) % classes;
  const int aux_per_class = aux_count / classes;
  for (int r = 0; r < cfg.aux_type_count; ++r) {
    Relation rel;
    rel.name = "rel" + std::to_string(r);
    rel.aux_features.resize(aux_count, dim);
    for (int a = 0; a < aux_count; ++a) {
      for (int j = 0; j < dim; ++j) {
        rel.aux_features(a, j) = means(a % classes, j) + rng.normal();
      }
    }
    rel.edges.reserve(static_cast<std::size_t>(n) * cfg.edges_per_node);
    for (int i = 0; i < n; ++i) {
      for (int e = 0; e < cfg.edges_per_node; ++e) {
        int aux;
        if (rng.uniform01() < kHomophily) {
          aux = ds.labels[i] + classes * rng.uniform_int(aux_per_class);
        } else {
          aux = rng.uniform_int(aux_count);
        }
        rel.edges.emplace_back(i, aux);
      }
    }
    ds.relations.push_back(std::move(rel));
  }

  // 60/20/20 split over a random permutation.
  const std::vector<int> perm = random_permutation(n, rng);
  int n_train = std::max(1, static_cast<int>(std::floor(0.6 * n)));
  int n_val = static_cast<int>(std::floor(0.2 * n));
  n_val = std::min(n_val, n - n_train);
  ds.split.assign(n, Split::Test);
  for (int i = 0; i < n_train; ++i) ds.split[perm[i]] = Split::Train;
  for (int i = n_train; i < n_train + n_val; ++i) ds.split[perm[i]] = Split::Val;

  // Corrupt a fixed fraction of train labels; edges and features above were
  // built from the clean labels, so flagged nodes genuinely conflict with
  // their surroundings.
  ds.noisy_flags.assign(n, 0);
  std::vector<int> train_nodes;
  for (int i = 0; i < n; ++i) {
    if (ds.split[i] == Split::Train) train_nodes.push_back(i);
  }
  const int corrupt =
      static_cast<int>(std::lround(cfg.noise_fraction * train_nodes.size()));
  for (int i = static_cast<int>(train_nodes.size()) - 1; i > 0; --i) {
    std::swap(train_nodes[i], train_nodes[rng.uniform_int(i + 1)]);
  }
  for (int i = 0; i < corrupt; ++i) {
    const int node = train_nodes[i];
    const int offset = 1 + rng.uniform_int(classes - 1);
    ds.labels[node] = (ds.labels[node] + offset) % classes;
    ds.noisy_flags[node] = 1;
  }
  return ds;
}

Eigen::MatrixXd aggregate_features(const Dataset& dataset) {
  validate(dataset);
  const int n = dataset.node_count();
  const int dim = dataset.feature_dim();
  const int relations = static_cast<int>(dataset.relations.size());

  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, dim * (1 + relations));
  out.leftCols(dim) = dataset.features;
  for (int r = 0; r < relations; ++r) {
    const Relation& rel = dataset.relations[r];
    auto block = out.middleCols(dim * (1 + r), dim);
    std::vector<int> degree(n, 0);
    for (const auto& [target, aux] : rel.edges) {
      block.row(target) += rel.aux_features.row(aux);
      ++degree[target];
    }
    for (int i = 0; i < n; ++i) {
      if (degree[i] > 0) block.row(i) /= static_cast<double>(degree[i]);
    }
  }
  return out;
}

void save_dataset(const Dataset& dataset, const fs::path& dir) {
  validate(dataset);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string());

  const int n = dataset.node_count();
  const int dim = dataset.feature_dim();

  detail::FileWriter features((dir / "features.csv").string());
  for (int i = 0; i < n; ++i) {
    std::string row;
    for (int j = 0; j < dim; ++j) {
      if (j) row += ',';
      row += detail::format_double(dataset.features(i, j));
    }
    features.line(row);
  }
  features.close();

  detail::FileWriter labels((dir / "labels.csv").string());
  for (int i = 0; i < n; ++i) labels.line(std::to_string(dataset.labels[i]));
  labels.close();

  detail::FileWriter split((dir / "split.csv").string());
  for (int i = 0; i < n; ++i) {
    split.line(std::to_string(i) + "," +
               std::string(to_string(dataset.split[i])));
  }
  split.close();

  if (dataset.has_noise_flags()) {
    detail::FileWriter flags((dir / "flags.csv").string());
    for (int i = 0; i < n; ++i) {
      flags.line(dataset.noisy_flags[i] ? "1" : "0");
    }
    flags.close();
  }

  for (const Relation& rel : dataset.relations) {
    detail::FileWriter edges((dir / ("edges_" + rel.name + ".csv")).string());
    for (const auto& [target, aux] : rel.edges) {
      edges.line(std::to_string(target) + "," + std::to_string(aux));
    }
    edges.close();

    detail::FileWriter aux_features(
        (dir / ("aux_features_" + rel.name + ".csv")).string());
    for (Eigen::Index a = 0; a < rel.aux_features.rows(); ++a) {
      std::string row;
      for (int j = 0; j < dim; ++j) {
        if (j) row += ',';
        row += detail::format_double(rel.aux_features(a, j));
      }
      aux_features.line(row);
    }
    aux_features.close();
  }
}

Dataset load_dataset(const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    throw IoError("dataset directory not found: " + dir.string());
  }
  for (const char* required : {"features.csv", "labels.csv", "split.csv"}) {
    if (!fs::exists(dir / required)) {
      throw FormatError("dataset is missing " + (dir / required).string());
    }
  }

  Dataset ds;

  const std::string features_file = (dir / "features.csv").string();
  const auto feature_lines = detail::read_lines(features_file);
  if (feature_lines.empty()) {
    throw FormatError(features_file + ": no feature rows");
  }
  const int n = static_cast<int>(feature_lines.size());
  const int dim =
      static_cast<int>(detail::split(feature_lines[0], ',').size());
  ds.features.resize(n, dim);
  for (int i = 0; i < n; ++i) {
    const auto fields = detail::split(feature_lines[i], ',');
    if (static_cast<int>(fields.size()) != dim) {
      throw FormatError(features_file + ":" + std::to_string(i + 1) +
                        ": expected " + std::to_string(dim) + " columns");
    }
    for (int j = 0; j < dim; ++j) {
      ds.features(i, j) = detail::parse_double(fields[j], features_file, i + 1);
    }
  }

  const std::string labels_file = (dir / "labels.csv").string();
  const auto label_lines = detail::read_lines(labels_file);
  if (static_cast<int>(label_lines.size()) != n) {
    throw FormatError("row-count mismatch between features.csv and labels.csv in " +
                      dir.string());
  }
  ds.labels.resize(n);
  int max_label = 0;
  for (int i = 0; i < n; ++i) {
    const long label = detail::parse_int(label_lines[i], labels_file, i + 1);
    if (label < 0) {
      throw FormatError(labels_file + ":" + std::to_string(i + 1) +
                        ": negative label");
    }
    ds.labels[i] = static_cast<int>(label);
    max_label = std::max(max_label, ds.labels[i]);
  }
  ds.class_count = max_label + 1;

  const std::string split_file = (dir / "split.csv").string();
  const auto split_lines = detail::read_lines(split_file);
  if (static_cast<int>(split_lines.size()) != n) {
    throw FormatError("row-count mismatch between features.csv and split.csv in " +
                      dir.string());
  }
  ds.split.resize(n);
  for (int i = 0; i < n; ++i) {
    const auto fields = detail::split(split_lines[i], ',');
    if (fields.size() != 2 ||
        detail::parse_int(fields[0], split_file, i + 1) != i) {
      throw FormatError(split_file + ":" + std::to_string(i + 1) +
                        ": expected '" + std::to_string(i) +
                        ",<train|val|test>'");
    }
    try {
      ds.split[i] = split_from_string(fields[1]);
    } catch (const ArgumentError& e) {
      throw FormatError(split_file + ":" + std::to_string(i + 1) + ": " +
                        e.what());
    }
  }

  if (fs::exists(dir / "flags.csv")) {
    const std::string flags_file = (dir / "flags.csv").string();
    const auto flag_lines = detail::read_lines(flags_file);
    if (static_cast<int>(flag_lines.size()) != n) {
      throw FormatError("row-count mismatch between features.csv and flags.csv in " +
                        dir.string());
    }
    ds.noisy_flags.resize(n);
    for (int i = 0; i < n; ++i) {
      if (flag_lines[i] != "0" && flag_lines[i] != "1") {
        throw FormatError(flags_file + ":" + std::to_string(i + 1) +
                          ": expected 0 or 1");
      }
      ds.noisy_flags[i] = flag_lines[i] == "1" ? 1 : 0;
    }
  }

  std::vector<std::string> relation_names;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string file = entry.path().filename().string();
    if (file.starts_with("edges_") && file.ends_with(".csv")) {
      relation_names.push_back(
          file.substr(6, file.size() - 6 - 4));
    }
  }
  std::sort(relation_names.begin(), relation_names.end(), relation_name_less);

  for (const std::string& name : relation_names) {
    Relation rel;
    rel.name = name;

    const fs::path aux_path = dir / ("aux_features_" + name + ".csv");
    if (!fs::exists(aux_path)) {
      throw FormatError("dataset is missing " + aux_path.string());
    }
    const std::string aux_file = aux_path.string();
    const auto aux_lines = detail::read_lines(aux_file);
    rel.aux_features.resize(static_cast<int>(aux_lines.size()), dim);
    for (std::size_t a = 0; a < aux_lines.size(); ++a) {
      const auto fields = detail::split(aux_lines[a], ',');
      if (static_cast<int>(fields.size()) != dim) {
        throw FormatError(aux_file + ":" + std::to_string(a + 1) +
                          ": expected " + std::to_string(dim) + " columns");
      }
      for (int j = 0; j < dim; ++j) {
        rel.aux_features(static_cast<Eigen::Index>(a), j) =
            detail::parse_double(fields[j], aux_file, a + 1);
      }
    }

    const std::string edges_file = (dir / ("edges_" + name + ".csv")).string();
    const auto edge_lines = detail::read_lines(edges_file);
    rel.edges.reserve(edge_lines.size());
    for (std::size_t e = 0; e < edge_lines.size(); ++e) {
      const auto fields = detail::split(edge_lines[e], ',');
      if (fields.size() != 2) {
        throw FormatError(edges_file + ":" + std::to_string(e + 1) +
                          ": expected 'target,aux'");
      }
      rel.edges.emplace_back(
          static_cast<std::int32_t>(
              detail::parse_int(fields[0], edges_file, e + 1)),
          static_cast<std::int32_t>(
              detail::parse_int(fields[1], edges_file, e + 1)));
    }
    ds.relations.push_back(std::move(rel));
  }

  try {
    validate(ds);
  } catch (const DataError& e) {
    throw FormatError(std::string(e.what()) + " (loaded from " + dir.string() +
                      ")");
  }
  return ds;
}

std::vector<int> split_indices(const Dataset& dataset, Split split) {
  std::vector<int> indices;
  for (int i = 0; i < dataset.node_count(); ++i) {
    if (dataset.split[i] == split) indices.push_back(i);
  }
  return indices;
}

}  // namespace ldts
