// Copyright 2026 The tweetfuse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>

#include "tweetfuse/model.hpp"

namespace tweetfuse {

struct AdamHyper {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  ModelParams m;
  ModelParams v;
  std::int64_t t = 0;

  static AdamState zeros_like(const ModelConfig& config);
};

/// Bias-corrected Adam update of one tensor at step `t` (already incremented).
void adam_update(std::span<double> theta, std::span<const double> grad, std::span<double> m,
                 std::span<double> v, std::int64_t t, double lr, const AdamHyper& hyper);

/// Increments state.t then updates every tensor. Throws Error, leaving
/// params and state untouched, if any gradient entry is non-finite.
void adam_step(ModelParams& params, const ModelParams& grads, AdamState& state, double lr,
               const AdamHyper& hyper = {});

}  // namespace tweetfuse
