// Copyright 2026 The tweetfuse Authors
// SPDX-License-Identifier: Apache-2.0

// File-mediated pipeline stages behind the CLI. Each stage reads and writes
// only its documented files, plus a provenance record: `<file>.provenance.json`
// for file outputs, `<dir>/provenance.json` for directory outputs.
//
// Train run directory layout:
//   run.json                name, seed, config digest, hyperparameters
//   provenance.json
//   fold_NN/checkpoint.json, fold_NN/params.bin
//   fold_NN/history.json    per-epoch train/val loss and lr
//   fold_NN/metrics.json    test accuracy and weighted F1

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tweetfuse/dataset.hpp"
#include "tweetfuse/embedding_store.hpp"
#include "tweetfuse/report.hpp"
#include "tweetfuse/run_config.hpp"
#include "tweetfuse/splitter.hpp"

namespace tweetfuse {

PooledDataset run_pool(const std::filesystem::path& annotations, const std::filesystem::path& out);

SplitFile run_split(const std::filesystem::path& dataset, std::size_t k, std::uint64_t seed,
                    const std::filesystem::path& out);

/// "name:dim[,name:dim...]"
std::vector<FeatureSpec> parse_feature_list(std::string_view text);

/// Writes `out/dataset.json` and one store per feature under `out/<name>/`.
void run_synth(std::size_t n_per_class, std::span<const FeatureSpec> features, double separation,
               std::uint64_t seed, const std::filesystem::path& out);

/// SHA-256 over the hyperparameters, the dataset and splits files, and the
/// feature stores' contents. Independent of paths and of the output location.
std::string config_digest(const RunConfig& config);

struct TrainRunSummary {
  std::string name;
  std::string config_digest;
  std::vector<FoldMetrics> folds;
};

/// Trains the selected folds (all when `fold_subset` is empty) into `out`.
TrainRunSummary run_train(const RunConfig& config, const std::filesystem::path& out,
                          std::span<const std::size_t> fold_subset = {}, std::size_t jobs = 1);

/// Gathers fold metrics from run directories. Directories of the same run
/// (same name and config digest, e.g. produced with disjoint --folds) are
/// merged into one report.
std::vector<CvReport> collect_reports(std::span<const std::filesystem::path> run_dirs);

std::vector<CvReport> run_report(std::span<const std::filesystem::path> run_dirs,
                                 ReportFormat format, const std::filesystem::path& out);

}  // namespace tweetfuse
