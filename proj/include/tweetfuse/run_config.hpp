// Copyright 2026 The tweetfuse Authors
// SPDX-License-Identifier: Apache-2.0

// Run config (JSON). Relative paths resolve against the config file's
// directory. Unknown keys are rejected.
//
//   {"name": "clip_image+roberta_text",          optional
//    "dataset": "dataset.json", "splits": "splits.json",
//    "features": ["stores/clip_image", "stores/roberta_text"],
//    "preset": "mvsa_s" | "mvsa_m",               optional
//    "model": {"proj_dim", "fusion_dim", "dropout"},
//    "train": {"lr", "epochs", "batch_size", "smoothing_alpha",
//              "plateau_patience", "lr_decay_factor",
//              "adam_beta1", "adam_beta2", "adam_eps", "seed"},
//    "output": "runs/x"}                           optional

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tweetfuse/model.hpp"
#include "tweetfuse/trainer.hpp"

namespace tweetfuse {

struct RunConfig {
  std::string name;  // empty: derived from the feature store names
  std::filesystem::path dataset;
  std::filesystem::path splits;
  std::vector<std::filesystem::path> features;
  std::size_t proj_dim = 128;
  std::size_t fusion_dim = 256;
  double dropout_rate = 0.5;
  TrainConfig train;
  std::filesystem::path output;  // empty if unset
};

/// Parses config text; `base` resolves relative paths.
RunConfig parse_run_config(std::string_view text, const std::filesystem::path& base = {});
RunConfig load_run_config(const std::filesystem::path& path);

/// Hyperparameters in canonical form (no paths), for digests and run records.
std::string hyperparameters_json(const RunConfig& config);

}  // namespace tweetfuse
