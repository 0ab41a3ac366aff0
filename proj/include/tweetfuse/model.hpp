// Copyright 2026 The tweetfuse Authors
// SPDX-License-Identifier: Apache-2.0

// Late-fusion classifier:
//
//   h_i = dropout(relu(W1_i x_i + b1_i))          one projection per feature
//   z   = dropout(relu(W2 [h_1; ...; h_m] + b2))  fusion
//   p   = softmax(W3 z + b3)                      classifier head
//
// Dropout is inverted (kept units scaled by 1 / (1 - rate)), so eval mode
// uses activations as they are. Batches are row-major: one sample per row.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "tweetfuse/dataset.hpp"

namespace tweetfuse {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

struct ModelConfig {
  std::vector<std::size_t> feature_dims;
  std::size_t proj_dim = 128;
  std::size_t fusion_dim = 256;
  std::size_t n_classes = kNumClasses;
  double dropout_rate = 0.5;

  /// Throws Error on an empty feature list, zero widths, or a rate outside [0, 1).
  void validate() const;
};

struct Linear {
  Matrix weight;  // out x in
  Vector bias;    // out
};

/// Weights and biases; also used for gradients and Adam moments.
struct ModelParams {
  std::vector<Linear> projections;
  Linear fusion;
  Linear head;

  static ModelParams zeros(const ModelConfig& config);

  /// Every tensor in the fixed serialization order: for each projection its
  /// weight (row-major) then bias, then fusion weight, fusion bias, head
  /// weight, head bias.
  std::vector<std::span<double>> tensors();
  std::vector<std::span<const double>> tensors() const;

  std::size_t parameter_count() const;
  bool all_finite() const;
  /// Throws Error if the shapes do not match `config`.
  void check_shapes(const ModelConfig& config) const;

  friend bool operator==(const ModelParams& a, const ModelParams& b);
};

enum class Mode { train, eval };

/// Intermediate values of one train-mode forward, consumed by backward().
struct ForwardCache {
  std::vector<Matrix> inputs;
  std::vector<Matrix> proj_pre;    // W1_i x_i + b1_i
  std::vector<Matrix> proj_mask;   // 0 or 1 / (1 - rate)
  Matrix fused;                    // [h_1 ... h_m] after dropout
  Matrix fusion_pre;
  Matrix fusion_mask;
  Matrix fusion_out;               // z after dropout
  Matrix logits;
  Matrix probs;
};

struct ForwardResult {
  Matrix probs;                       // batch x n_classes
  Matrix logits;
  std::optional<ForwardCache> cache;  // train mode only
};

/// Weights uniform in +-sqrt(6 / fan_in), biases zero.
ModelParams init_params(const ModelConfig& config, std::uint64_t seed);

/// `features[i]` is the batch for feature i (batch x dims[i]); all share the
/// batch size. `rng_seed` drives the dropout masks in train mode.
ForwardResult forward(const ModelConfig& config, const ModelParams& params,
                      std::span<const Matrix> features, Mode mode, std::uint64_t rng_seed = 0);

struct BackwardResult {
  ModelParams grads;
  double loss = 0.0;  // mean cross-entropy over the batch
};

/// Gradients of the mean cross-entropy against `targets` (batch x n_classes
/// distributions), through the dropout masks recorded in `cache`.
BackwardResult backward(const ModelConfig& config, const ModelParams& params,
                        const ForwardCache& cache, const Matrix& targets);

/// Row-wise argmax, ties to the lowest class index.
std::vector<std::size_t> argmax_rows(const Matrix& probs);

std::vector<Sentiment> predict(const ModelConfig& config, const ModelParams& params,
                               std::span<const Matrix> features);

}  // namespace tweetfuse
