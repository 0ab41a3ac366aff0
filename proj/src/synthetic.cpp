// Copyright 2026 The tweetfuse Authors
// SPDX-License-Identifier: Apache-2.0

#include "tweetfuse/synthetic.hpp"

#include <cmath>
#include <cstdio>

#include "tweetfuse/error.hpp"
#include "tweetfuse/rng.hpp"

namespace tweetfuse {

SyntheticData generate_synthetic(std::size_t n_per_class, std::span<const FeatureSpec> features,
                                 double separation, std::uint64_t seed) {
  if (n_per_class == 0) throw Error("synthetic: n_per_class must be positive");
  if (!(separation >= 0.0) || !std::isfinite(separation)) {
    throw Error("synthetic: separation must be finite and >= 0");
  }
  if (features.empty()) throw Error("synthetic: at least one feature is required");

  const std::size_t n = kNumClasses * n_per_class;
  SyntheticData out;
  std::vector<std::string> ids;
  ids.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "syn%05zu", i);
    ids.emplace_back(buf);
    const Sentiment label = sentiment_from_index(i % kNumClasses);
    out.dataset.samples.push_back({ids.back(), label, PoolStatus::valid});
    ++out.dataset.counts.per_class[class_index(label)];
  }
  out.dataset.counts.valid = n;

  for (std::size_t f = 0; f < features.size(); ++f) {
    FeatureSpec spec = features[f];
    if (spec.dim == 0) throw Error("synthetic: feature '" + spec.name + "' has dim 0");
    spec.count = n;
    Rng rng(derive_seed(seed, {f}));
    std::vector<float> data(n * spec.dim);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t c = i % kNumClasses;
      float* row = data.data() + i * spec.dim;
      for (std::size_t j = 0; j < spec.dim; ++j) row[j] = static_cast<float>(rng.normal());
      row[(c + f) % spec.dim] += static_cast<float>(separation);
    }
    out.features.emplace_back(std::move(spec), ids, std::move(data));
  }
  return out;
}

}  // namespace tweetfuse
