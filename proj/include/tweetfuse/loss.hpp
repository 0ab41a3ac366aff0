// Copyright 2026 The tweetfuse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tweetfuse/dataset.hpp"
#include "tweetfuse/model.hpp"

namespace tweetfuse {

/// Label-smoothed target: 1 - alpha on `label`, alpha / (k - 1) elsewhere.
/// Sums to one. Requires 0 <= alpha < 1 and k >= 2.
std::vector<double> smooth_labels(std::size_t label, double alpha, std::size_t k);

/// One smoothed target row per label.
Matrix smoothed_targets(std::span<const Sentiment> labels, double alpha,
                        std::size_t k = kNumClasses);

/// Mean over rows of -sum_c target_c * log(prob_c). Every probability must be > 0.
double cross_entropy(const Matrix& probs, const Matrix& targets);

/// cross_entropy(softmax(logits), targets) evaluated through log-softmax, so
/// it stays finite when a probability underflows.
double softmax_cross_entropy(const Matrix& logits, const Matrix& targets);

}  // namespace tweetfuse
