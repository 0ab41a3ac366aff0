// Copyright 2026 The tweetfuse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tweetfuse/dataset.hpp"
#include "tweetfuse/embedding_store.hpp"

namespace tweetfuse {

struct SyntheticData {
  PooledDataset dataset;
  std::vector<EmbeddingMatrix> features;
};

/// Balanced labelled fixture with Gaussian class-conditional features.
///
/// Sample i ("syn00000", ...) has class i mod 3. For feature f, a sample of
/// class c is unit-variance isotropic noise plus `separation` on coordinate
/// (c + f) mod dim. separation == 0 gives class-independent features.
/// FeatureSpec::count is ignored; every store gets 3 * n_per_class rows.
SyntheticData generate_synthetic(std::size_t n_per_class, std::span<const FeatureSpec> features,
                                 double separation, std::uint64_t seed);

}  // namespace tweetfuse
