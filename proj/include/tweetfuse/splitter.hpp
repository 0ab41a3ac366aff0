// Copyright 2026 The tweetfuse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "tweetfuse/dataset.hpp"

namespace tweetfuse {

struct FoldSpec {
  std::size_t index = 0;
  std::vector<std::string> train_ids;
  std::vector<std::string> val_ids;
  std::vector<std::string> test_ids;

  friend bool operator==(const FoldSpec&, const FoldSpec&) = default;
};

/// Stratified k-fold with a rotating validation bucket.
///
/// Each class's ids (in input order) are shuffled with the seed. The
/// per-class lists are concatenated in class-index order and dealt
/// round-robin into k buckets, so every bucket holds floor or ceil of
/// n_c / k samples of class c and bucket sizes differ by at most one.
/// Fold i tests on bucket i, validates on bucket (i + 1) mod k and trains
/// on the rest. Requires k >= 2, only valid samples, and >= k per class.
std::vector<FoldSpec> stratified_kfold(std::span<const PooledSample> samples, std::size_t k,
                                       std::uint64_t seed);

struct SplitViolation {
  enum class Kind { overlap, coverage, unknown_id, stratification };
  Kind kind;
  std::size_t fold;
  std::string detail;
};

struct SplitValidation {
  std::vector<SplitViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks disjointness, full coverage per fold, exactly-once testing, and
/// that each class's count in every test/val set is floor or ceil of n_c / k.
SplitValidation validate_splits(std::span<const FoldSpec> folds,
                                std::span<const PooledSample> samples);

struct SplitFile {
  std::uint64_t seed = 0;
  std::size_t k = 0;
  std::string dataset_hash;
  std::vector<FoldSpec> folds;
};

std::string splits_to_json(const SplitFile& splits);
SplitFile splits_from_json(std::string_view text);
void write_splits(const std::filesystem::path& path, const SplitFile& splits);
SplitFile read_splits(const std::filesystem::path& path);

}  // namespace tweetfuse
