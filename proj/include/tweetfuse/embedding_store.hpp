// Copyright 2026 The tweetfuse Authors
// SPDX-License-Identifier: Apache-2.0

// On-disk feature tables. A store is a directory holding
//
//   manifest.json  {"feature", "dim", "count", "dtype": "f32le",
//                   "ids_file": "ids.txt", "data_file": "data.bin"}
//   ids.txt        one id per line, LF terminated; line order is row order
//   data.bin       count x dim IEEE-754 binary32 little-endian, row-major
//
// An all-zero row is an ordinary row (e.g. "no face detected").

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tweetfuse/error.hpp"

namespace tweetfuse {

struct FeatureSpec {
  std::string name;
  std::size_t dim = 0;
  std::size_t count = 0;
};

/// Immutable ids x dim matrix of finite floats.
class EmbeddingMatrix {
 public:
  /// Validates shape, id uniqueness and finiteness; throws Error.
  EmbeddingMatrix(FeatureSpec spec, std::vector<std::string> ids,
                  std::vector<float> data);

  const FeatureSpec& spec() const { return spec_; }
  const std::string& name() const { return spec_.name; }
  std::size_t dim() const { return spec_.dim; }
  std::size_t count() const { return spec_.count; }
  const std::vector<std::string>& ids() const { return ids_; }
  std::span<const float> data() const { return data_; }

  std::span<const float> row(std::size_t i) const {
    return std::span<const float>(data_).subspan(i * spec_.dim, spec_.dim);
  }

  std::optional<std::size_t> find(std::string_view id) const;

  friend bool operator==(const EmbeddingMatrix& a, const EmbeddingMatrix& b);

 private:
  FeatureSpec spec_;
  std::vector<std::string> ids_;
  std::vector<float> data_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Thrown by align() when an id is absent from one of the matrices.
class MissingIdError : public Error {
 public:
  MissingIdError(std::string feature, std::string id);
  const std::string& feature() const { return feature_; }
  const std::string& id() const { return id_; }

 private:
  std::string feature_;
  std::string id_;
};

void write_store(const std::filesystem::path& dir, const EmbeddingMatrix& matrix);

/// Builds (and so validates) the matrix, then writes it.
void write_store(const std::filesystem::path& dir, const FeatureSpec& spec,
                 std::vector<std::string> ids, std::vector<float> data);

EmbeddingMatrix read_store(const std::filesystem::path& dir);

/// Re-orders every matrix to `order`. Rows not named in `order` are dropped.
std::vector<EmbeddingMatrix> align(std::span<const EmbeddingMatrix> matrices,
                                   std::span<const std::string> order);

}  // namespace tweetfuse
