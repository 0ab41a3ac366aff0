// Copyright 2026 The tweetfuse Authors
// SPDX-License-Identifier: Apache-2.0

#include "tweetfuse/splitter.hpp"

#include <array>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "tweetfuse/digest.hpp"
#include "tweetfuse/error.hpp"
#include "tweetfuse/rng.hpp"

namespace tweetfuse {

using nlohmann::json;

std::vector<FoldSpec> stratified_kfold(std::span<const PooledSample> samples, std::size_t k,
                                       std::uint64_t seed) {
  if (k < 2) throw Error("stratified_kfold: k must be >= 2");

  std::array<std::vector<std::string>, kNumClasses> by_class;
  std::unordered_set<std::string> seen;
  for (const auto& s : samples) {
    if (s.status != PoolStatus::valid || !s.label) {
      throw Error("stratified_kfold: sample '" + s.sample_id + "' is not valid");
    }
    if (!seen.insert(s.sample_id).second) {
      throw Error("stratified_kfold: duplicate sample id '" + s.sample_id + "'");
    }
    by_class[class_index(*s.label)].push_back(s.sample_id);
  }
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    if (by_class[c].size() < k) {
      throw Error("stratified_kfold: class '" + std::string(to_string(sentiment_from_index(c))) +
                  "' has " + std::to_string(by_class[c].size()) + " samples, fewer than k=" +
                  std::to_string(k));
    }
  }

  Rng rng(derive_seed(seed, {0x5b1d}));
  std::vector<std::vector<std::string>> buckets(k);
  std::size_t next = 0;
  for (auto& ids : by_class) {
    shuffle(std::span<std::string>(ids), rng);
    for (auto& id : ids) {
      buckets[next].push_back(std::move(id));
      next = (next + 1) % k;
    }
  }

  std::vector<FoldSpec> folds(k);
  for (std::size_t i = 0; i < k; ++i) {
    FoldSpec& f = folds[i];
    f.index = i;
    const std::size_t val = (i + 1) % k;
    f.test_ids = buckets[i];
    f.val_ids = buckets[val];
    for (std::size_t b = 0; b < k; ++b) {
      if (b == i || b == val) continue;
      f.train_ids.insert(f.train_ids.end(), buckets[b].begin(), buckets[b].end());
    }
  }
  return folds;
}

SplitValidation validate_splits(std::span<const FoldSpec> folds,
                                std::span<const PooledSample> samples) {
  SplitValidation report;
  auto flag = [&](SplitViolation::Kind kind, std::size_t fold, std::string detail) {
    report.violations.push_back({kind, fold, std::move(detail)});
  };

  std::unordered_map<std::string, std::size_t> label_of;
  std::array<std::size_t, kNumClasses> class_total{};
  for (const auto& s : samples) {
    if (s.status != PoolStatus::valid || !s.label) continue;
    label_of.emplace(s.sample_id, class_index(*s.label));
    ++class_total[class_index(*s.label)];
  }
  const std::size_t k = folds.size();

  std::unordered_map<std::string, std::size_t> times_tested;
  for (const auto& f : folds) {
    std::unordered_map<std::string, int> owner;  // 0 train, 1 val, 2 test
    const std::array<const std::vector<std::string>*, 3> parts = {&f.train_ids, &f.val_ids,
                                                                  &f.test_ids};
    static constexpr std::array<const char*, 3> kPartName = {"train", "val", "test"};
    for (int p = 0; p < 3; ++p) {
      for (const auto& id : *parts[p]) {
        if (!label_of.contains(id)) {
          flag(SplitViolation::Kind::unknown_id, f.index,
               "id '" + id + "' in " + kPartName[p] + " is not a valid sample");
          continue;
        }
        auto [it, inserted] = owner.emplace(id, p);
        if (!inserted) {
          flag(SplitViolation::Kind::overlap, f.index,
               "id '" + id + "' appears in both " + kPartName[it->second] + " and " +
                   kPartName[p]);
        }
      }
    }
    if (owner.size() != label_of.size()) {
      flag(SplitViolation::Kind::coverage, f.index,
           std::to_string(label_of.size() - std::min(owner.size(), label_of.size())) +
               " valid samples missing from train/val/test");
    }
    for (const auto& id : f.test_ids) ++times_tested[id];

    if (k == 0) continue;
    for (int p = 1; p < 3; ++p) {
      std::array<std::size_t, kNumClasses> cnt{};
      for (const auto& id : *parts[p]) {
        if (auto it = label_of.find(id); it != label_of.end()) ++cnt[it->second];
      }
      for (std::size_t c = 0; c < kNumClasses; ++c) {
        const std::size_t lo = class_total[c] / k;
        const std::size_t hi = (class_total[c] + k - 1) / k;
        if (cnt[c] < lo || cnt[c] > hi) {
          flag(SplitViolation::Kind::stratification, f.index,
               std::string(kPartName[p]) + " has " + std::to_string(cnt[c]) + " '" +
                   std::string(to_string(sentiment_from_index(c))) + "' samples, expected " +
                   std::to_string(lo) + (lo == hi ? "" : ".." + std::to_string(hi)));
        }
      }
    }
  }

  for (const auto& [id, _] : label_of) {
    const auto it = times_tested.find(id);
    const std::size_t n = it == times_tested.end() ? 0 : it->second;
    if (n != 1) {
      flag(SplitViolation::Kind::coverage, k,
           "id '" + id + "' tested " + std::to_string(n) + " times");
    }
  }
  return report;
}

std::string splits_to_json(const SplitFile& splits) {
  json folds = json::array();
  for (const auto& f : splits.folds) {
    folds.push_back(
        {{"index", f.index}, {"train", f.train_ids}, {"val", f.val_ids}, {"test", f.test_ids}});
  }
  const json doc = {{"seed", splits.seed},
                    {"k", splits.k},
                    {"dataset_hash", splits.dataset_hash},
                    {"folds", folds}};
  return doc.dump() + "\n";
}

SplitFile splits_from_json(std::string_view text) {
  SplitFile out;
  try {
    const json doc = json::parse(text);
    out.seed = doc.at("seed").get<std::uint64_t>();
    out.k = doc.at("k").get<std::size_t>();
    out.dataset_hash = doc.at("dataset_hash").get<std::string>();
    for (const auto& f : doc.at("folds")) {
      FoldSpec spec;
      spec.index = f.at("index").get<std::size_t>();
      spec.train_ids = f.at("train").get<std::vector<std::string>>();
      spec.val_ids = f.at("val").get<std::vector<std::string>>();
      spec.test_ids = f.at("test").get<std::vector<std::string>>();
      out.folds.push_back(std::move(spec));
    }
  } catch (const json::exception& e) {
    throw Error(std::string("splits: malformed JSON: ") + e.what());
  }
  if (out.folds.size() != out.k) throw Error("splits: fold count does not match k");
  return out;
}

void write_splits(const std::filesystem::path& path, const SplitFile& splits) {
  write_file(path, splits_to_json(splits));
}

SplitFile read_splits(const std::filesystem::path& path) {
  return splits_from_json(read_file(path));
}

}  // namespace tweetfuse
