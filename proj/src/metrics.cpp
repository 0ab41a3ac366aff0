// Copyright 2026 The tweetfuse Authors
// SPDX-License-Identifier: Apache-2.0

#include "tweetfuse/metrics.hpp"

#include <algorithm>
#include <array>

#include "tweetfuse/error.hpp"

namespace tweetfuse {

namespace {

void check_inputs(std::span<const Sentiment> preds, std::span<const Sentiment> labels) {
  if (preds.size() != labels.size()) throw Error("metrics: prediction/label lengths differ");
  if (labels.empty()) throw Error("metrics: empty input");
}

}  // namespace

double accuracy(std::span<const Sentiment> preds, std::span<const Sentiment> labels) {
  check_inputs(preds, labels);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) hits += preds[i] == labels[i];
  return static_cast<double>(hits) / static_cast<double>(labels.size());
}

double weighted_f1(std::span<const Sentiment> preds, std::span<const Sentiment> labels) {
  check_inputs(preds, labels);
  std::array<std::size_t, kNumClasses> tp{}, predicted{}, support{};
  for (std::size_t i = 0; i < preds.size(); ++i) {
    ++predicted[class_index(preds[i])];
    ++support[class_index(labels[i])];
    if (preds[i] == labels[i]) ++tp[class_index(labels[i])];
  }
  double total = 0.0;
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    if (support[c] == 0) continue;
    const double precision =
        predicted[c] == 0 ? 0.0 : static_cast<double>(tp[c]) / static_cast<double>(predicted[c]);
    const double recall = static_cast<double>(tp[c]) / static_cast<double>(support[c]);
    const double f1 =
        precision + recall == 0.0 ? 0.0 : 2.0 * precision * recall / (precision + recall);
    total += f1 * static_cast<double>(support[c]);
  }
  return total / static_cast<double>(labels.size());
}

Aggregate aggregate(std::span<const double> values) {
  if (values.empty()) throw Error("aggregate: no values");
  Aggregate a;
  a.min = *std::min_element(values.begin(), values.end());
  a.max = *std::max_element(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  a.avg = sum / static_cast<double>(values.size());
  // Rounding in the mean must not break min <= avg <= max.
  a.avg = std::clamp(a.avg, a.min, a.max);
  return a;
}

}  // namespace tweetfuse
