// Copyright 2026 The tweetfuse Authors
// SPDX-License-Identifier: Apache-2.0

#include "tweetfuse/adam.hpp"

#include <cmath>

#include "tweetfuse/error.hpp"

namespace tweetfuse {

AdamState AdamState::zeros_like(const ModelConfig& config) {
  return {ModelParams::zeros(config), ModelParams::zeros(config), 0};
}

void adam_update(std::span<double> theta, std::span<const double> grad, std::span<double> m,
                 std::span<double> v, std::int64_t t, double lr, const AdamHyper& hyper) {
  const double c1 = 1.0 - std::pow(hyper.beta1, static_cast<double>(t));
  const double c2 = 1.0 - std::pow(hyper.beta2, static_cast<double>(t));
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double g = grad[i];
    m[i] = hyper.beta1 * m[i] + (1.0 - hyper.beta1) * g;
    v[i] = hyper.beta2 * v[i] + (1.0 - hyper.beta2) * g * g;
    const double m_hat = m[i] / c1;
    const double v_hat = v[i] / c2;
    theta[i] -= lr * m_hat / (std::sqrt(v_hat) + hyper.eps);
  }
}

void adam_step(ModelParams& params, const ModelParams& grads, AdamState& state, double lr,
               const AdamHyper& hyper) {
  auto p = params.tensors();
  const auto g = grads.tensors();
  auto m = state.m.tensors();
  auto v = state.v.tensors();
  if (g.size() != p.size() || m.size() != p.size() || v.size() != p.size()) {
    throw Error("adam_step: parameter/gradient/state layouts differ");
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (g[i].size() != p[i].size() || m[i].size() != p[i].size() || v[i].size() != p[i].size()) {
      throw Error("adam_step: tensor " + std::to_string(i) + " shape mismatch");
    }
  }
  if (!grads.all_finite()) throw Error("adam_step: non-finite gradient");

  ++state.t;
  for (std::size_t i = 0; i < p.size(); ++i) adam_update(p[i], g[i], m[i], v[i], state.t, lr, hyper);
}

}  // namespace tweetfuse
