// Copyright 2026 The tweetfuse Authors
// SPDX-License-Identifier: Apache-2.0

#include "tweetfuse/loss.hpp"

#include <cmath>

#include "tweetfuse/error.hpp"

namespace tweetfuse {

std::vector<double> smooth_labels(std::size_t label, double alpha, std::size_t k) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw Error("smooth_labels: alpha must be in [0, 1)");
  if (k < 2) throw Error("smooth_labels: need at least two classes");
  if (label >= k) throw Error("smooth_labels: label out of range");
  std::vector<double> target(k, alpha / static_cast<double>(k - 1));
  target[label] = 1.0 - alpha;
  return target;
}

Matrix smoothed_targets(std::span<const Sentiment> labels, double alpha, std::size_t k) {
  Matrix out(static_cast<Eigen::Index>(labels.size()), static_cast<Eigen::Index>(k));
  for (std::size_t r = 0; r < labels.size(); ++r) {
    const auto row = smooth_labels(class_index(labels[r]), alpha, k);
    for (std::size_t c = 0; c < k; ++c) {
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row[c];
    }
  }
  return out;
}

double cross_entropy(const Matrix& probs, const Matrix& targets) {
  if (probs.rows() != targets.rows() || probs.cols() != targets.cols()) {
    throw Error("cross_entropy: shape mismatch");
  }
  if (probs.rows() == 0) throw Error("cross_entropy: empty batch");
  double total = 0.0;
  for (Eigen::Index r = 0; r < probs.rows(); ++r) {
    for (Eigen::Index c = 0; c < probs.cols(); ++c) {
      if (!(probs(r, c) > 0.0)) throw Error("cross_entropy: probabilities must be positive");
      total -= targets(r, c) * std::log(probs(r, c));
    }
  }
  return total / static_cast<double>(probs.rows());
}

double softmax_cross_entropy(const Matrix& logits, const Matrix& targets) {
  if (logits.rows() != targets.rows() || logits.cols() != targets.cols()) {
    throw Error("softmax_cross_entropy: shape mismatch");
  }
  if (logits.rows() == 0) throw Error("softmax_cross_entropy: empty batch");
  double total = 0.0;
  for (Eigen::Index r = 0; r < logits.rows(); ++r) {
    const double top = logits.row(r).maxCoeff();
    const double lse = top + std::log((logits.row(r).array() - top).exp().sum());
    total -= (targets.row(r).array() * (logits.row(r).array() - lse)).sum();
  }
  return total / static_cast<double>(logits.rows());
}

}  // namespace tweetfuse
