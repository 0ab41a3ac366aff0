// Copyright 2026 The tweetfuse Authors
// SPDX-License-Identifier: Apache-2.0

// report.json:
//   {"runs": [{"name", "folds": [{"index", "accuracy", "weighted_f1"}],
//              "accuracy": {"avg", "min", "max"},
//              "weighted_f1": {"avg", "min", "max"},
//              "seed", "config_digest"}]}
// Metrics are fractions in [0, 1]; the text table prints percentages.

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "tweetfuse/metrics.hpp"

namespace tweetfuse {

struct FoldMetrics {
  std::size_t index = 0;
  double accuracy = 0.0;
  double weighted_f1 = 0.0;
};

struct CvReport {
  std::string name;
  std::vector<FoldMetrics> folds;  // sorted by index
  Aggregate accuracy;
  Aggregate weighted_f1;
  std::uint64_t seed = 0;
  std::string config_digest;
};

/// Sorts folds by index and computes the aggregates. Throws Error on an
/// empty or duplicated fold list.
CvReport make_report(std::string name, std::vector<FoldMetrics> folds, std::uint64_t seed,
                     std::string config_digest);

std::string report_to_json(std::span<const CvReport> reports);
std::vector<CvReport> reports_from_json(std::string_view text);

/// One row per run with Avg/Min/Max columns for accuracy and weighted F1.
std::string report_to_table(std::span<const CvReport> reports);

enum class ReportFormat { json, table };

/// JSON is always produced: written to `path` for ReportFormat::json, or next
/// to the table as `<path>.json` for ReportFormat::table.
void emit_report(const std::filesystem::path& path, std::span<const CvReport> reports,
                 ReportFormat format);

}  // namespace tweetfuse
