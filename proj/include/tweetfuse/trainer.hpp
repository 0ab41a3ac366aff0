// Copyright 2026 The tweetfuse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tweetfuse/adam.hpp"
#include "tweetfuse/dataset.hpp"
#include "tweetfuse/embedding_store.hpp"
#include "tweetfuse/model.hpp"
#include "tweetfuse/splitter.hpp"

namespace tweetfuse {

struct TrainConfig {
  double lr = 2e-5;
  std::size_t epochs = 100;
  std::size_t batch_size = 32;
  double smoothing_alpha = 0.0;
  std::size_t plateau_patience = 5;
  double lr_decay_factor = 10.0;
  AdamHyper adam;
  std::uint64_t seed = 0;

  void validate() const;
};

struct EpochRecord {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0.0;
  double val_loss = 0.0;
  double lr = 0.0;  // rate used during this epoch
};

struct FoldResult {
  std::size_t fold_index = 0;
  ModelParams best_params;
  std::size_t best_epoch = 0;
  double best_val_loss = 0.0;
  std::vector<EpochRecord> history;
  double test_accuracy = 0.0;
  double test_weighted_f1 = 0.0;
  std::vector<std::string> test_ids;
  std::vector<Sentiment> test_labels;
  std::vector<Sentiment> test_predictions;
};

/// Gathers the rows named by `ids` from an embedding matrix, widened to double.
Matrix to_matrix(const EmbeddingMatrix& matrix, std::span<const std::string> ids);

/// Trains one fold: seeded shuffled mini-batches (last partial batch kept),
/// an eval-mode validation pass each epoch feeding the plateau scheduler,
/// and test metrics from the parameters with the lowest validation loss.
/// Every random stream is derived from (seed, fold index, ...).
FoldResult train_fold(const FoldSpec& fold, const PooledDataset& dataset,
                      std::span<const EmbeddingMatrix> embeddings, const ModelConfig& model_config,
                      const TrainConfig& train_config);

/// Trains every fold, on up to `jobs` threads. Results are in fold order and
/// do not depend on `jobs`.
std::vector<FoldResult> run_cv(std::span<const FoldSpec> folds, const PooledDataset& dataset,
                               std::span<const EmbeddingMatrix> embeddings,
                               const ModelConfig& model_config, const TrainConfig& train_config,
                               std::size_t jobs = 1);

}  // namespace tweetfuse
