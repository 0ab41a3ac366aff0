// Copyright 2026 The tweetfuse Authors
// SPDX-License-Identifier: Apache-2.0

#include "tweetfuse/trainer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "tweetfuse/error.hpp"
#include "tweetfuse/loss.hpp"
#include "tweetfuse/metrics.hpp"
#include "tweetfuse/rng.hpp"
#include "tweetfuse/schedule.hpp"

namespace tweetfuse {

namespace {

enum Stream : std::uint64_t { kInitStream = 0, kShuffleStream = 1, kDropoutStream = 2 };

struct SplitData {
  std::vector<Matrix> features;
  std::vector<Sentiment> labels;
  Matrix targets;
};

SplitData load_split(std::span<const std::string> ids,
                     const std::unordered_map<std::string, Sentiment>& labels,
                     std::span<const EmbeddingMatrix> embeddings, const TrainConfig& config,
                     std::size_t n_classes, const char* what) {
  if (ids.empty()) throw Error(std::string("train_fold: empty ") + what + " split");
  SplitData out;
  for (const auto& id : ids) {
    const auto it = labels.find(id);
    if (it == labels.end()) {
      throw Error(std::string("train_fold: ") + what + " id '" + id +
                  "' is not a valid sample of the dataset");
    }
    out.labels.push_back(it->second);
  }
  for (const auto& e : embeddings) out.features.push_back(to_matrix(e, ids));
  out.targets = smoothed_targets(out.labels, config.smoothing_alpha, n_classes);
  return out;
}

std::vector<Matrix> gather(const std::vector<Matrix>& features, std::span<const std::size_t> rows) {
  std::vector<Matrix> out;
  out.reserve(features.size());
  for (const auto& f : features) {
    Matrix m(static_cast<Eigen::Index>(rows.size()), f.cols());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      m.row(static_cast<Eigen::Index>(r)) = f.row(static_cast<Eigen::Index>(rows[r]));
    }
    out.push_back(std::move(m));
  }
  return out;
}

Matrix gather_rows(const Matrix& m, std::span<const std::size_t> rows) {
  Matrix out(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out.row(static_cast<Eigen::Index>(r)) = m.row(static_cast<Eigen::Index>(rows[r]));
  }
  return out;
}

}  // namespace

void TrainConfig::validate() const {
  if (!(lr > 0.0) || !std::isfinite(lr)) throw Error("train config: lr must be positive");
  if (epochs == 0 || batch_size == 0 || plateau_patience == 0) {
    throw Error("train config: epochs, batch_size and plateau_patience must be positive");
  }
  if (!(smoothing_alpha >= 0.0 && smoothing_alpha < 1.0)) {
    throw Error("train config: smoothing_alpha must be in [0, 1)");
  }
  if (!(lr_decay_factor >= 1.0)) throw Error("train config: lr_decay_factor must be >= 1");
  if (!(adam.beta1 >= 0.0 && adam.beta1 < 1.0 && adam.beta2 >= 0.0 && adam.beta2 < 1.0 &&
        adam.eps > 0.0)) {
    throw Error("train config: invalid Adam hyperparameters");
  }
}

Matrix to_matrix(const EmbeddingMatrix& matrix, std::span<const std::string> ids) {
  Matrix out(static_cast<Eigen::Index>(ids.size()), static_cast<Eigen::Index>(matrix.dim()));
  for (std::size_t r = 0; r < ids.size(); ++r) {
    const auto row = matrix.find(ids[r]);
    if (!row) throw MissingIdError(matrix.name(), ids[r]);
    const auto values = matrix.row(*row);
    for (std::size_t c = 0; c < values.size(); ++c) {
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = values[c];
    }
  }
  return out;
}

FoldResult train_fold(const FoldSpec& fold, const PooledDataset& dataset,
                      std::span<const EmbeddingMatrix> embeddings, const ModelConfig& model_config,
                      const TrainConfig& train_config) {
  model_config.validate();
  train_config.validate();
  if (embeddings.size() != model_config.feature_dims.size()) {
    throw Error("train_fold: " + std::to_string(embeddings.size()) + " feature stores for " +
                std::to_string(model_config.feature_dims.size()) + " model inputs");
  }
  for (std::size_t i = 0; i < embeddings.size(); ++i) {
    if (embeddings[i].dim() != model_config.feature_dims[i]) {
      throw Error("train_fold: feature '" + embeddings[i].name() + "' has width " +
                  std::to_string(embeddings[i].dim()) + ", model expects " +
                  std::to_string(model_config.feature_dims[i]));
    }
  }

  std::unordered_map<std::string, Sentiment> labels;
  for (const auto& s : dataset.samples) {
    if (s.status == PoolStatus::valid) labels.emplace(s.sample_id, *s.label);
  }
  const std::size_t k = model_config.n_classes;
  const SplitData train = load_split(fold.train_ids, labels, embeddings, train_config, k, "train");
  const SplitData val = load_split(fold.val_ids, labels, embeddings, train_config, k, "val");
  const SplitData test = load_split(fold.test_ids, labels, embeddings, train_config, k, "test");

  const std::uint64_t seed = train_config.seed;
  const std::uint64_t fold_id = fold.index;
  ModelParams params = init_params(model_config, derive_seed(seed, {fold_id, kInitStream}));
  AdamState adam = AdamState::zeros_like(model_config);
  PlateauScheduler scheduler(train_config.lr, train_config.plateau_patience,
                             train_config.lr_decay_factor);

  FoldResult result;
  result.fold_index = fold.index;
  result.best_val_loss = std::numeric_limits<double>::infinity();

  const std::size_t n_train = fold.train_ids.size();
  std::vector<std::size_t> order(n_train);
  for (std::size_t epoch = 1; epoch <= train_config.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng shuffle_rng(derive_seed(seed, {fold_id, kShuffleStream, epoch}));
    shuffle(std::span<std::size_t>(order), shuffle_rng);

    const double lr = scheduler.lr();
    double loss_sum = 0.0;
    std::size_t batch_no = 0;
    for (std::size_t start = 0; start < n_train; start += train_config.batch_size, ++batch_no) {
      const std::size_t end = std::min(n_train, start + train_config.batch_size);
      const std::span<const std::size_t> rows(order.data() + start, end - start);
      const auto inputs = gather(train.features, rows);
      const Matrix targets = gather_rows(train.targets, rows);
      const auto fwd =
          forward(model_config, params, inputs, Mode::train,
                  derive_seed(seed, {fold_id, kDropoutStream, epoch, batch_no}));
      const auto bwd = backward(model_config, params, *fwd.cache, targets);
      adam_step(params, bwd.grads, adam, lr, train_config.adam);
      loss_sum += bwd.loss * static_cast<double>(rows.size());
    }

    const auto val_fwd = forward(model_config, params, val.features, Mode::eval);
    const double val_loss = softmax_cross_entropy(val_fwd.logits, val.targets);
    result.history.push_back({epoch, loss_sum / static_cast<double>(n_train), val_loss, lr});
    if (val_loss < result.best_val_loss) {
      result.best_val_loss = val_loss;
      result.best_epoch = epoch;
      result.best_params = params;
    }
    scheduler.step(val_loss);
  }
  if (result.best_epoch == 0) {
    throw Error("train_fold: validation loss never finite in fold " + std::to_string(fold.index));
  }

  result.test_ids = fold.test_ids;
  result.test_labels = test.labels;
  result.test_predictions = predict(model_config, result.best_params, test.features);
  result.test_accuracy = accuracy(result.test_predictions, result.test_labels);
  result.test_weighted_f1 = weighted_f1(result.test_predictions, result.test_labels);
  return result;
}

std::vector<FoldResult> run_cv(std::span<const FoldSpec> folds, const PooledDataset& dataset,
                               std::span<const EmbeddingMatrix> embeddings,
                               const ModelConfig& model_config, const TrainConfig& train_config,
                               std::size_t jobs) {
  std::vector<FoldResult> results(folds.size());
  std::vector<std::exception_ptr> errors(folds.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < folds.size(); i = next++) {
      try {
        results[i] = train_fold(folds[i], dataset, embeddings, model_config, train_config);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n_threads = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(folds.size(), 1));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }
  for (std::size_t i = 0; i < folds.size(); ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      throw Error("fold " + std::to_string(folds[i].index) + ": " + e.what());
    }
  }
  return results;
}

}  // namespace tweetfuse
