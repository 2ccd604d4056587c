#include "ldts/nn.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>

#include "ldts/error.hpp"

namespace ldts {

namespace {

constexpr char kMagic[4] = {'L', 'D', 'T', 'S'};
constexpr std::uint32_t kVersion = 1;

bool all_finite(const Eigen::MatrixXd& m) { return m.allFinite(); }
bool all_finite(const Eigen::VectorXd& v) { return v.allFinite(); }

void fill_uniform(Eigen::MatrixXd& m, double bound, RngState& rng) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      m(r, c) = (2.0 * rng.uniform01() - 1.0) * bound;
    }
  }
}

void put_u32(std::ostream& out, std::uint32_t v) {
  unsigned char bytes[4];
  for (int i = 0; i < 4; ++i) bytes[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(bytes), 4);
}

void put_f64(std::ostream& out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  unsigned char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>(bits >> (8 * i));
  out.write(reinterpret_cast<const char*>(bytes), 8);
}

std::uint32_t get_u32(std::istream& in, const std::string& file) {
  unsigned char bytes[4];
  if (!in.read(reinterpret_cast<char*>(bytes), 4)) {
    throw FormatError("checkpoint truncated: " + file);
  }
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes[i]) << (8 * i);
  return v;
}

double get_f64(std::istream& in, const std::string& file) {
  unsigned char bytes[8];
  if (!in.read(reinterpret_cast<char*>(bytes), 8)) {
    throw FormatError("checkpoint truncated: " + file);
  }
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

void write_matrix(std::ostream& out, const Eigen::MatrixXd& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) put_f64(out, m(r, c));
  }
}

void read_matrix(std::istream& in, Eigen::MatrixXd& m, const std::string& file) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = get_f64(in, file);
  }
}

}  // namespace

ModelParams init_params(int input_dim, int hidden_dim, int class_count,
                        RngState& rng) {
  if (input_dim < 1 || hidden_dim < 1 || class_count < 1) {
    throw ArgumentError("init_params: dimensions must be >= 1, got input=" +
                        std::to_string(input_dim) + " hidden=" +
                        std::to_string(hidden_dim) + " classes=" +
                        std::to_string(class_count));
  }
  ModelParams params;
  params.w1.resize(hidden_dim, input_dim);
  params.b1 = Eigen::VectorXd::Zero(hidden_dim);
  params.w2.resize(class_count, hidden_dim);
  params.b2 = Eigen::VectorXd::Zero(class_count);

  const double bound1 = std::sqrt(6.0 / (input_dim + hidden_dim));
  const double bound2 = std::sqrt(6.0 / (hidden_dim + class_count));
  fill_uniform(params.w1, bound1, rng);
  fill_uniform(params.w2, bound2, rng);
  return params;
}

Logits forward(const ModelParams& params, const Eigen::MatrixXd& features) {
  if (features.cols() != params.w1.cols()) {
    throw ShapeError("forward: features have " +
                     std::to_string(features.cols()) +
                     " columns, model expects " +
                     std::to_string(params.w1.cols()));
  }
  Eigen::MatrixXd hidden =
      ((features * params.w1.transpose()).rowwise() + params.b1.transpose())
          .cwiseMax(0.0);
  return (hidden * params.w2.transpose()).rowwise() + params.b2.transpose();
}

std::vector<double> per_sample_loss(const Logits& logits,
                                    const std::vector<int>& labels) {
  const Eigen::Index n = logits.rows();
  const int classes = static_cast<int>(logits.cols());
  if (static_cast<Eigen::Index>(labels.size()) != n) {
    throw ShapeError("per_sample_loss: " + std::to_string(n) +
                     " logit rows but " + std::to_string(labels.size()) +
                     " labels");
  }
  std::vector<double> losses(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const int label = labels[static_cast<std::size_t>(i)];
    if (label < 0 || label >= classes) {
      throw DataError("per_sample_loss: label " + std::to_string(label) +
                      " out of range [0, " + std::to_string(classes) + ")");
    }
    const auto row = logits.row(i);
    const double peak = row.maxCoeff();
    const double log_sum =
        peak + std::log((row.array() - peak).exp().sum());
    losses[static_cast<std::size_t>(i)] = log_sum - row(label);
  }
  return losses;
}

ParamGradients masked_backward(const ModelParams& params,
                               const Eigen::MatrixXd& features,
                               const std::vector<int>& labels,
                               const SampleSet& sample) {
  if (sample.empty()) {
    throw ArgumentError("masked_backward: empty sample");
  }
  if (features.cols() != params.w1.cols()) {
    throw ShapeError("masked_backward: feature width mismatch");
  }
  if (static_cast<Eigen::Index>(labels.size()) != features.rows()) {
    throw ShapeError("masked_backward: label count mismatch");
  }
  const int s = sample.size();
  const int classes = params.class_count();

  Eigen::MatrixXd x(s, features.cols());
  std::vector<int> y(static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i) {
    const int node = sample.indices[static_cast<std::size_t>(i)];
    if (node < 0 || node >= features.rows()) {
      throw ArgumentError("masked_backward: sample index " +
                          std::to_string(node) + " out of range");
    }
    x.row(i) = features.row(node);
    y[static_cast<std::size_t>(i)] = labels[static_cast<std::size_t>(node)];
  }

  const Eigen::MatrixXd pre =
      (x * params.w1.transpose()).rowwise() + params.b1.transpose();
  const Eigen::MatrixXd hidden = pre.cwiseMax(0.0);
  const Eigen::MatrixXd logits =
      (hidden * params.w2.transpose()).rowwise() + params.b2.transpose();

  // d(mean loss)/d(logits): softmax minus one-hot, scaled by 1/|sample|.
  Eigen::MatrixXd dlogits(s, classes);
  for (int i = 0; i < s; ++i) {
    const auto row = logits.row(i);
    const double peak = row.maxCoeff();
    Eigen::RowVectorXd p = (row.array() - peak).exp();
    p /= p.sum();
    const int label = y[static_cast<std::size_t>(i)];
    if (label < 0 || label >= classes) {
      throw DataError("masked_backward: label " + std::to_string(label) +
                      " out of range [0, " + std::to_string(classes) + ")");
    }
    p(label) -= 1.0;
    dlogits.row(i) = p / static_cast<double>(s);
  }

  ParamGradients grads;
  grads.w2 = dlogits.transpose() * hidden;
  grads.b2 = dlogits.colwise().sum();
  // ReLU subgradient at exactly 0 is taken as 0.
  const Eigen::MatrixXd dhidden =
      (dlogits * params.w2).cwiseProduct((pre.array() > 0.0).cast<double>().matrix());
  grads.w1 = dhidden.transpose() * x;
  grads.b1 = dhidden.colwise().sum();
  return grads;
}

ModelParams sgd_step(const ModelParams& params, const ParamGradients& grads,
                     double learning_rate) {
  if (!(learning_rate > 0.0)) {
    throw ArgumentError("sgd_step: learning rate must be positive, got " +
                        std::to_string(learning_rate));
  }
  if (grads.w1.rows() != params.w1.rows() || grads.w1.cols() != params.w1.cols() ||
      grads.w2.rows() != params.w2.rows() || grads.w2.cols() != params.w2.cols() ||
      grads.b1.size() != params.b1.size() || grads.b2.size() != params.b2.size()) {
    throw ShapeError("sgd_step: gradient shape does not match parameters");
  }
  if (!all_finite(grads.w1) || !all_finite(grads.b1) || !all_finite(grads.w2) ||
      !all_finite(grads.b2)) {
    throw NumericError("sgd_step: non-finite gradient");
  }
  ModelParams next;
  next.w1 = params.w1 - learning_rate * grads.w1;
  next.b1 = params.b1 - learning_rate * grads.b1;
  next.w2 = params.w2 - learning_rate * grads.w2;
  next.b2 = params.b2 - learning_rate * grads.b2;
  return next;
}

void save_checkpoint(const ModelParams& params,
                     const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) {
    throw IoError("cannot open checkpoint for writing: " + file.string());
  }
  out.write(kMagic, 4);
  put_u32(out, kVersion);
  put_u32(out, static_cast<std::uint32_t>(params.w1.rows()));
  put_u32(out, static_cast<std::uint32_t>(params.w1.cols()));
  put_u32(out, static_cast<std::uint32_t>(params.w2.rows()));
  put_u32(out, static_cast<std::uint32_t>(params.w2.cols()));
  write_matrix(out, params.w1);
  for (Eigen::Index i = 0; i < params.b1.size(); ++i) put_f64(out, params.b1(i));
  write_matrix(out, params.w2);
  for (Eigen::Index i = 0; i < params.b2.size(); ++i) put_f64(out, params.b2(i));
  if (!out) {
    throw IoError("failed writing checkpoint: " + file.string());
  }
}

ModelParams load_checkpoint(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    throw IoError("cannot open checkpoint: " + file.string());
  }
  const std::string name = file.string();
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) {
    throw FormatError("not an LDTS checkpoint: " + name);
  }
  const std::uint32_t version = get_u32(in, name);
  if (version != kVersion) {
    throw FormatError("unsupported checkpoint version " +
                      std::to_string(version) + ": " + name);
  }
  const std::uint32_t w1_rows = get_u32(in, name);
  const std::uint32_t w1_cols = get_u32(in, name);
  const std::uint32_t w2_rows = get_u32(in, name);
  const std::uint32_t w2_cols = get_u32(in, name);
  if (w1_rows < 1 || w1_cols < 1 || w2_rows < 1 || w2_cols != w1_rows) {
    throw FormatError("inconsistent checkpoint dimensions: " + name);
  }
  ModelParams params;
  params.w1.resize(w1_rows, w1_cols);
  params.b1.resize(w1_rows);
  params.w2.resize(w2_rows, w2_cols);
  params.b2.resize(w2_rows);
  read_matrix(in, params.w1, name);
  for (Eigen::Index i = 0; i < params.b1.size(); ++i) params.b1(i) = get_f64(in, name);
  read_matrix(in, params.w2, name);
  for (Eigen::Index i = 0; i < params.b2.size(); ++i) params.b2(i) = get_f64(in, name);
  return params;
}

}  // namespace ldts
