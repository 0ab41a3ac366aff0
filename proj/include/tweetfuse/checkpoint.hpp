// Copyright 2026 The tweetfuse Authors
// SPDX-License-Identifier: Apache-2.0

// Checkpoint directory: checkpoint.json (config, seed, epoch, val_loss) and
// params.bin, the tensors of ModelParams::tensors() concatenated in that
// order as binary32 little-endian.

#pragma once

#include <cstdint>
#include <filesystem>

#include "tweetfuse/model.hpp"

namespace tweetfuse {

struct Checkpoint {
  ModelConfig config;
  ModelParams params;
  std::uint64_t seed = 0;
  std::size_t epoch = 0;
  double val_loss = 0.0;
};

void save_checkpoint(const std::filesystem::path& dir, const Checkpoint& checkpoint);
/// Parameters come back rounded to binary32.
Checkpoint load_checkpoint(const std::filesystem::path& dir);

}  // namespace tweetfuse
