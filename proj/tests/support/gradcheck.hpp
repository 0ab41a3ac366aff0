// Copyright 2026 The tweetfuse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "support/oracles.hpp"
#include "tweetfuse/model.hpp"
#include "tweetfuse/rng.hpp"

namespace tweetfuse::testing {

inline oracle::NaiveNet to_naive(const ModelParams& p) {
  auto rows = [](const Matrix& w) {
    std::vector<std::vector<double>> out(static_cast<std::size_t>(w.rows()));
    for (Eigen::Index r = 0; r < w.rows(); ++r)
      for (Eigen::Index c = 0; c < w.cols(); ++c) out[static_cast<std::size_t>(r)].push_back(w(r, c));
    return out;
  };
  auto vec = [](const Vector& b) { return std::vector<double>(b.data(), b.data() + b.size()); };
  oracle::NaiveNet net;
  for (const auto& l : p.projections) {
    net.w1.push_back(rows(l.weight));
    net.b1.push_back(vec(l.bias));
  }
  net.w2 = rows(p.fusion.weight);
  net.b2 = vec(p.fusion.bias);
  net.w3 = rows(p.head.weight);
  net.b3 = vec(p.head.bias);
  return net;
}

struct GradCheck {
  double max_rel_error = 0.0;
  std::size_t compared = 0;
};

/// |a - b| / max(|a|, |b|), taken as 0 when both are exactly 0.
inline double relative_error(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

/// Random config with dropout 0, random params and inputs; compares backward()
/// against central differences of the loop-based oracle.
inline GradCheck random_gradient_check(std::uint64_t seed, std::size_t max_dim = 8) {
  Rng rng(seed);
  ModelConfig cfg;
  const std::size_t m = 1 + rng.below(3);
  for (std::size_t i = 0; i < m; ++i) cfg.feature_dims.push_back(1 + rng.below(max_dim));
  cfg.proj_dim = 1 + rng.below(max_dim);
  cfg.fusion_dim = 1 + rng.below(max_dim);
  cfg.dropout_rate = 0.0;
  const std::size_t batch = 1 + rng.below(4);

  ModelParams params = ModelParams::zeros(cfg);
  for (auto t : params.tensors())
    for (double& v : t) v = rng.normal();
  std::vector<Matrix> features;
  for (std::size_t d : cfg.feature_dims) {
    Matrix x(static_cast<Eigen::Index>(batch), static_cast<Eigen::Index>(d));
    for (Eigen::Index r = 0; r < x.rows(); ++r)
      for (Eigen::Index c = 0; c < x.cols(); ++c) x(r, c) = rng.normal();
    features.push_back(x);
  }
  Matrix targets(static_cast<Eigen::Index>(batch), 3);
  for (Eigen::Index r = 0; r < targets.rows(); ++r) {
    double a = rng.uniform(), b = rng.uniform(), c = rng.uniform();
    const double s = a + b + c;
    targets.row(r) << a / s, b / s, c / s;
  }

  const auto fwd = forward(cfg, params, features, Mode::train, seed);
  const auto back = backward(cfg, params, *fwd.cache, targets);

  std::vector<std::vector<std::vector<double>>> x(batch);
  std::vector<std::vector<double>> y(batch);
  for (std::size_t b = 0; b < batch; ++b) {
    for (const auto& f : features) {
      const auto row = f.row(static_cast<Eigen::Index>(b));
      x[b].emplace_back(row.data(), row.data() + row.size());
    }
    for (int c = 0; c < 3; ++c) y[b].push_back(targets(static_cast<Eigen::Index>(b), c));
  }
  const auto numeric = oracle::finite_difference_grad(to_naive(params), x, y, 1e-5);

  GradCheck out;
  std::size_t k = 0;
  for (auto t : back.grads.tensors()) {
    for (double g : t) {
      out.max_rel_error = std::max(out.max_rel_error, relative_error(g, numeric.at(k++)));
    }
  }
  out.compared = k;
  if (k != numeric.size()) out.max_rel_error = INFINITY;
  return out;
}

}  // namespace tweetfuse::testing
