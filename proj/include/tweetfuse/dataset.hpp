// Copyright 2026 The tweetfuse Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tweetfuse {

/// Class indices are fixed: negative=0, neutral=1, positive=2.
enum class Sentiment : std::uint8_t { negative = 0, neutral = 1, positive = 2 };

inline constexpr std::size_t kNumClasses = 3;
inline constexpr std::array<Sentiment, kNumClasses> kAllSentiments = {
    Sentiment::negative, Sentiment::neutral, Sentiment::positive};

constexpr std::size_t class_index(Sentiment s) { return static_cast<std::size_t>(s); }
Sentiment sentiment_from_index(std::size_t index);
std::string_view to_string(Sentiment s);
/// Accepts "negative"/"neutral"/"positive", case-insensitive.
std::optional<Sentiment> parse_sentiment(std::string_view text);

/// Per-annotator labels for one image-text pair. One annotator for the
/// single-annotated set, three for the multi-annotated one.
struct AnnotationRecord {
  std::string sample_id;
  std::vector<Sentiment> image_labels;
  std::vector<Sentiment> text_labels;
};

enum class PoolStatus : std::uint8_t { valid, conflict_filtered, no_majority_filtered };
std::string_view to_string(PoolStatus s);
std::optional<PoolStatus> parse_pool_status(std::string_view text);

struct PooledSample {
  std::string sample_id;
  std::optional<Sentiment> label;  // engaged iff status == valid
  PoolStatus status = PoolStatus::valid;
};

struct ClassCounts {
  std::array<std::size_t, kNumClasses> per_class{};
  std::size_t valid = 0;
  std::size_t conflict_filtered = 0;
  std::size_t no_majority_filtered = 0;
};

struct PooledDataset {
  std::vector<PooledSample> samples;
  ClassCounts counts;

  std::vector<PooledSample> valid_samples() const;
};

/// Majority vote over one modality's annotators. Single vote: that label.
/// Three votes: the label with at least two votes, else nullopt.
/// Throws Error for any other vote count.
std::optional<Sentiment> pool_modality(std::span<const Sentiment> votes);

/// Combines the pooled image and text labels. Equal labels are kept, a polar
/// label wins over neutral, and opposite polarities are a conflict (nullopt).
std::optional<Sentiment> pool_pair(Sentiment image, Sentiment text);

/// Pools every record; throws Error on duplicate ids or malformed records.
PooledDataset build_dataset(std::span<const AnnotationRecord> records);

/// Parses labelResultAll-style annotation text. Each line holds an id
/// followed by one or three `text,image` label pairs, separated by tabs or
/// commas. A leading header line is skipped.
std::vector<AnnotationRecord> parse_annotations(std::istream& in);
std::vector<AnnotationRecord> read_annotations(const std::filesystem::path& path);

std::string dataset_to_json(const PooledDataset& dataset);
PooledDataset dataset_from_json(std::string_view text);
void write_dataset(const std::filesystem::path& path, const PooledDataset& dataset);
PooledDataset read_dataset(const std::filesystem::path& path);

}  // namespace tweetfuse
