// Copyright 2026 The tweetfuse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>

#include "tweetfuse/dataset.hpp"

namespace tweetfuse {

/// Fraction of exact matches. Throws Error on empty or mismatched input.
double accuracy(std::span<const Sentiment> preds, std::span<const Sentiment> labels);

/// Support-weighted mean of per-class F1. A precision, recall or F1 with a
/// zero denominator counts as 0; classes absent from `labels` have weight 0.
double weighted_f1(std::span<const Sentiment> preds, std::span<const Sentiment> labels);

struct Aggregate {
  double avg = 0.0;
  double min = 0.0;
  double max = 0.0;
};

/// Arithmetic mean, minimum and maximum. Throws Error on empty input.
Aggregate aggregate(std::span<const double> values);

}  // namespace tweetfuse
