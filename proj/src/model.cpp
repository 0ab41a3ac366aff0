// Copyright 2026 The tweetfuse Authors
// SPDX-License-Identifier: Apache-2.0

#include "tweetfuse/model.hpp"

#include <cmath>

#include "tweetfuse/error.hpp"
#include "tweetfuse/rng.hpp"

namespace tweetfuse {

namespace {

Linear zero_linear(std::size_t out, std::size_t in) {
  const auto rows = static_cast<Eigen::Index>(out);
  const auto cols = static_cast<Eigen::Index>(in);
  return {Matrix::Zero(rows, cols), Vector::Zero(rows)};
}

void check_linear(const Linear& l, std::size_t out, std::size_t in, const char* what) {
  if (l.weight.rows() != static_cast<Eigen::Index>(out) ||
      l.weight.cols() != static_cast<Eigen::Index>(in) ||
      l.bias.size() != static_cast<Eigen::Index>(out)) {
    throw Error(std::string("model: ") + what + " has shape " +
                std::to_string(l.weight.rows()) + "x" + std::to_string(l.weight.cols()) +
                ", expected " + std::to_string(out) + "x" + std::to_string(in));
  }
}

Matrix affine(const Matrix& x, const Linear& l) {
  Matrix y = x * l.weight.transpose();
  y.rowwise() += l.bias.transpose();
  return y;
}

Matrix dropout_mask(Eigen::Index rows, Eigen::Index cols, double rate, Rng& rng) {
  if (rate == 0.0) return Matrix::Ones(rows, cols);
  const double keep_scale = 1.0 / (1.0 - rate);
  Matrix mask(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) mask(r, c) = rng.uniform() >= rate ? keep_scale : 0.0;
  }
  return mask;
}

Matrix relu(const Matrix& x) { return x.cwiseMax(0.0); }

Matrix relu_grad(const Matrix& pre) {
  return (pre.array() > 0.0).cast<double>().matrix();
}

void softmax_rows(const Matrix& logits, Matrix& probs) {
  probs.resize(logits.rows(), logits.cols());
  for (Eigen::Index r = 0; r < logits.rows(); ++r) {
    const double top = logits.row(r).maxCoeff();
    probs.row(r) = (logits.row(r).array() - top).exp().matrix();
    probs.row(r) /= probs.row(r).sum();
  }
}

Eigen::Index check_features(const ModelConfig& config, std::span<const Matrix> features) {
  if (features.size() != config.feature_dims.size()) {
    throw Error("forward: got " + std::to_string(features.size()) + " features, model has " +
                std::to_string(config.feature_dims.size()));
  }
  const Eigen::Index batch = features.front().rows();
  for (std::size_t i = 0; i < features.size(); ++i) {
    if (features[i].cols() != static_cast<Eigen::Index>(config.feature_dims[i])) {
      throw Error("forward: feature " + std::to_string(i) + " has width " +
                  std::to_string(features[i].cols()) + ", expected " +
                  std::to_string(config.feature_dims[i]));
    }
    if (features[i].rows() != batch) {
      throw Error("forward: feature batches are not aligned");
    }
  }
  return batch;
}

}  // namespace

void ModelConfig::validate() const {
  if (feature_dims.empty()) throw Error("model config: at least one feature is required");
  for (std::size_t d : feature_dims) {
    if (d == 0) throw Error("model config: feature widths must be positive");
  }
  if (proj_dim == 0 || fusion_dim == 0 || n_classes < 2) {
    throw Error("model config: layer widths must be positive and n_classes >= 2");
  }
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) {
    throw Error("model config: dropout_rate must be in [0, 1)");
  }
}

ModelParams ModelParams::zeros(const ModelConfig& config) {
  config.validate();
  ModelParams p;
  for (std::size_t d : config.feature_dims) p.projections.push_back(zero_linear(config.proj_dim, d));
  p.fusion = zero_linear(config.fusion_dim, config.proj_dim * config.feature_dims.size());
  p.head = zero_linear(config.n_classes, config.fusion_dim);
  return p;
}

std::vector<std::span<double>> ModelParams::tensors() {
  std::vector<std::span<double>> out;
  auto add = [&](Linear& l) {
    out.emplace_back(l.weight.data(), static_cast<std::size_t>(l.weight.size()));
    out.emplace_back(l.bias.data(), static_cast<std::size_t>(l.bias.size()));
  };
  for (auto& l : projections) add(l);
  add(fusion);
  add(head);
  return out;
}

std::vector<std::span<const double>> ModelParams::tensors() const {
  std::vector<std::span<const double>> out;
  for (auto t : const_cast<ModelParams*>(this)->tensors()) out.emplace_back(t);
  return out;
}

std::size_t ModelParams::parameter_count() const {
  std::size_t n = 0;
  for (auto t : tensors()) n += t.size();
  return n;
}

bool ModelParams::all_finite() const {
  for (auto t : tensors()) {
    for (double v : t) {
      if (!std::isfinite(v)) return false;
    }
  }
  return true;
}

void ModelParams::check_shapes(const ModelConfig& config) const {
  if (projections.size() != config.feature_dims.size()) {
    throw Error("model: parameter set has " + std::to_string(projections.size()) +
                " projections, config has " + std::to_string(config.feature_dims.size()));
  }
  for (std::size_t i = 0; i < projections.size(); ++i) {
    check_linear(projections[i], config.proj_dim, config.feature_dims[i], "projection");
  }
  check_linear(fusion, config.fusion_dim, config.proj_dim * projections.size(), "fusion layer");
  check_linear(head, config.n_classes, config.fusion_dim, "head");
}

bool operator==(const ModelParams& a, const ModelParams& b) {
  const auto ta = a.tensors();
  const auto tb = b.tensors();
  if (ta.size() != tb.size()) return false;
  for (std::size_t i = 0; i < ta.size(); ++i) {
    if (!std::equal(ta[i].begin(), ta[i].end(), tb[i].begin(), tb[i].end())) return false;
  }
  return true;
}

ModelParams init_params(const ModelConfig& config, std::uint64_t seed) {
  ModelParams p = ModelParams::zeros(config);
  Rng rng(seed);
  auto fill = [&](Linear& l) {
    const double bound = std::sqrt(6.0 / static_cast<double>(l.weight.cols()));
    for (Eigen::Index i = 0; i < l.weight.size(); ++i) {
      l.weight.data()[i] = rng.uniform(-bound, bound);
    }
  };
  for (auto& l : p.projections) fill(l);
  fill(p.fusion);
  fill(p.head);
  return p;
}

ForwardResult forward(const ModelConfig& config, const ModelParams& params,
                      std::span<const Matrix> features, Mode mode, std::uint64_t rng_seed) {
  config.validate();
  params.check_shapes(config);
  const Eigen::Index batch = check_features(config, features);
  const bool train = mode == Mode::train;
  const double rate = config.dropout_rate;
  const auto proj = static_cast<Eigen::Index>(config.proj_dim);
  Rng rng(rng_seed);

  ForwardCache cache;
  cache.fused.resize(batch, proj * static_cast<Eigen::Index>(features.size()));
  for (std::size_t i = 0; i < features.size(); ++i) {
    Matrix pre = affine(features[i], params.projections[i]);
    Matrix act = relu(pre);
    if (train) {
      Matrix mask = dropout_mask(batch, proj, rate, rng);
      act.array() *= mask.array();
      cache.inputs.push_back(features[i]);
      cache.proj_pre.push_back(std::move(pre));
      cache.proj_mask.push_back(std::move(mask));
    }
    cache.fused.middleCols(static_cast<Eigen::Index>(i) * proj, proj) = act;
  }

  cache.fusion_pre = affine(cache.fused, params.fusion);
  cache.fusion_out = relu(cache.fusion_pre);
  if (train) {
    cache.fusion_mask = dropout_mask(batch, cache.fusion_out.cols(), rate, rng);
    cache.fusion_out.array() *= cache.fusion_mask.array();
  }
  cache.logits = affine(cache.fusion_out, params.head);
  softmax_rows(cache.logits, cache.probs);

  ForwardResult out;
  out.probs = cache.probs;
  out.logits = cache.logits;
  if (train) out.cache = std::move(cache);
  return out;
}

BackwardResult backward(const ModelConfig& config, const ModelParams& params,
                        const ForwardCache& cache, const Matrix& targets) {
  params.check_shapes(config);
  const Eigen::Index batch = cache.logits.rows();
  if (cache.inputs.size() != params.projections.size() ||
      cache.fusion_mask.rows() != batch) {
    throw Error("backward: cache does not come from a train-mode forward of this model");
  }
  if (targets.rows() != batch || targets.cols() != cache.logits.cols()) {
    throw Error("backward: targets shape does not match the batch");
  }

  BackwardResult out;
  out.grads = ModelParams::zeros(config);
  const double inv_batch = 1.0 / static_cast<double>(batch);

  // loss via log-softmax; d loss / d logits = p * sum(y) - y per row.
  double loss = 0.0;
  Matrix d_logits(batch, cache.logits.cols());
  for (Eigen::Index r = 0; r < batch; ++r) {
    const double top = cache.logits.row(r).maxCoeff();
    const double lse = top + std::log((cache.logits.row(r).array() - top).exp().sum());
    loss -= (targets.row(r).array() * (cache.logits.row(r).array() - lse)).sum();
    d_logits.row(r) = cache.probs.row(r) * targets.row(r).sum() - targets.row(r);
  }
  out.loss = loss * inv_batch;
  d_logits *= inv_batch;

  out.grads.head.weight = d_logits.transpose() * cache.fusion_out;
  out.grads.head.bias = d_logits.colwise().sum().transpose();

  Matrix d_fusion = d_logits * params.head.weight;
  d_fusion.array() *= cache.fusion_mask.array() * relu_grad(cache.fusion_pre).array();
  out.grads.fusion.weight = d_fusion.transpose() * cache.fused;
  out.grads.fusion.bias = d_fusion.colwise().sum().transpose();

  const Matrix d_fused = d_fusion * params.fusion.weight;
  const auto proj = static_cast<Eigen::Index>(config.proj_dim);
  for (std::size_t i = 0; i < cache.inputs.size(); ++i) {
    Matrix d_proj = d_fused.middleCols(static_cast<Eigen::Index>(i) * proj, proj);
    d_proj.array() *= cache.proj_mask[i].array() * relu_grad(cache.proj_pre[i]).array();
    out.grads.projections[i].weight = d_proj.transpose() * cache.inputs[i];
    out.grads.projections[i].bias = d_proj.colwise().sum().transpose();
  }
  return out;
}

std::vector<std::size_t> argmax_rows(const Matrix& probs) {
  std::vector<std::size_t> out(static_cast<std::size_t>(probs.rows()));
  for (Eigen::Index r = 0; r < probs.rows(); ++r) {
    Eigen::Index best = 0;
    for (Eigen::Index c = 1; c < probs.cols(); ++c) {
      if (probs(r, c) > probs(r, best)) best = c;
    }
    out[static_cast<std::size_t>(r)] = static_cast<std::size_t>(best);
  }
  return out;
}

std::vector<Sentiment> predict(const ModelConfig& config, const ModelParams& params,
                               std::span<const Matrix> features) {
  const auto probs = forward(config, params, features, Mode::eval).probs;
  std::vector<Sentiment> out;
  for (std::size_t c : argmax_rows(probs)) out.push_back(sentiment_from_index(c));
  return out;
}

}  // namespace tweetfuse
