// Copyright 2026 The tweetfuse Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "support/temp_dir.hpp"
#include "tweetfuse/error.hpp"
#include "tweetfuse/rng.hpp"
#include "tweetfuse/splitter.hpp"

using namespace tweetfuse;

namespace {

std::vector<PooledSample> make_samples(std::size_t neg, std::size_t neu, std::size_t pos) {
  std::vector<PooledSample> out;
  const std::size_t counts[3] = {neg, neu, pos};
  std::size_t id = 0;
  for (std::size_t c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < counts[c]; ++i)
      out.push_back({"s" + std::to_string(id++), sentiment_from_index(c), PoolStatus::valid});
  return out;
}

bool has_kind(const SplitValidation& v, SplitViolation::Kind kind) {
  return std::any_of(v.violations.begin(), v.violations.end(),
                     [&](const SplitViolation& x) { return x.kind == kind; });
}

}  // namespace

TEST_CASE("4511-sample dataset splits into 8:1:1 folds") {
  const auto samples = make_samples(1358, 470, 2683);
  const auto folds = stratified_kfold(samples, 10, 42);
  REQUIRE(folds.size() == 10);
  std::size_t total_test = 0;
  for (const auto& f : folds) {
    CHECK((f.test_ids.size() == 451 || f.test_ids.size() == 452));
    CHECK((f.val_ids.size() == 451 || f.val_ids.size() == 452));
    CHECK(f.train_ids.size() + f.val_ids.size() + f.test_ids.size() == 4511);
    total_test += f.test_ids.size();
  }
  CHECK(total_test == 4511);
  CHECK(validate_splits(folds, samples).ok());
}

TEST_CASE("30 balanced samples give one of each class per test fold") {
  const auto samples = make_samples(10, 10, 10);
  std::map<std::string, Sentiment> label;
  for (const auto& s : samples) label[s.sample_id] = *s.label;
  const auto folds = stratified_kfold(samples, 10, 3);
  for (const auto& f : folds) {
    REQUIRE(f.test_ids.size() == 3);
    std::set<Sentiment> seen;
    for (const auto& id : f.test_ids) seen.insert(label[id]);
    CHECK(seen.size() == 3);
  }
}

TEST_CASE("split generation is deterministic and seed dependent") {
  const auto samples = make_samples(40, 25, 33);
  CHECK(stratified_kfold(samples, 5, 9) == stratified_kfold(samples, 5, 9));
  CHECK(stratified_kfold(samples, 5, 9) != stratified_kfold(samples, 5, 10));
  CHECK(validate_splits(stratified_kfold(samples, 5, 9), samples).violations.empty());
}

TEST_CASE("validator catches planted defects") {
  const auto samples = make_samples(20, 20, 20);
  const auto good = stratified_kfold(samples, 10, 1);
  REQUIRE(validate_splits(good, samples).ok());

  SUBCASE("an id tested in two folds") {
    auto bad = good;
    const std::string moved = bad[1].train_ids.back();
    // Put a fold-1 train id into fold-1 test as well: overlap inside the fold, duplicate test coverage.
    bad[1].test_ids.push_back(moved);
    const auto v = validate_splits(bad, samples);
    CHECK_FALSE(v.ok());
    CHECK(has_kind(v, SplitViolation::Kind::overlap));
    CHECK(has_kind(v, SplitViolation::Kind::coverage));
  }
  SUBCASE("a class over-represented by 3 in one test set") {
    auto bad = good;
    // Move three negatives from fold 0 train into fold 0 test.
    int moved = 0;
    for (auto it = bad[0].train_ids.begin(); it != bad[0].train_ids.end() && moved < 3;) {
      const auto idx = std::stoul(it->substr(1));
      if (idx < 20) {
        bad[0].test_ids.push_back(*it);
        it = bad[0].train_ids.erase(it);
        ++moved;
      } else {
        ++it;
      }
    }
    REQUIRE(moved == 3);
    const auto v = validate_splits(bad, samples);
    CHECK(has_kind(v, SplitViolation::Kind::stratification));
  }
  SUBCASE("an unknown id") {
    auto bad = good;
    bad[2].train_ids.push_back("ghost");
    CHECK(has_kind(validate_splits(bad, samples), SplitViolation::Kind::unknown_id));
  }
  SUBCASE("a dropped id") {
    auto bad = good;
    bad[4].train_ids.pop_back();
    CHECK(has_kind(validate_splits(bad, samples), SplitViolation::Kind::coverage));
  }
}

TEST_CASE("splitter argument errors") {
  CHECK_THROWS_AS(stratified_kfold(make_samples(5, 5, 5), 1, 0), Error);
  CHECK_THROWS_AS(stratified_kfold(make_samples(5, 2, 5), 3, 0), Error);
  auto samples = make_samples(5, 5, 5);
  samples[0].label.reset();
  samples[0].status = PoolStatus::conflict_filtered;
  CHECK_THROWS_AS(stratified_kfold(samples, 3, 0), Error);
  auto dup = make_samples(5, 5, 5);
  dup[1].sample_id = dup[0].sample_id;
  CHECK_THROWS_AS(stratified_kfold(dup, 3, 0), Error);
}

TEST_CASE("splits.json round trip") {
  tweetfuse::testing::TempDir tmp("splits");
  const auto samples = make_samples(7, 8, 9);
  const SplitFile s{11, 3, "abc123", stratified_kfold(samples, 3, 11)};
  write_splits(tmp / "splits.json", s);
  const auto back = read_splits(tmp / "splits.json");
  CHECK(back.seed == 11);
  CHECK(back.k == 3);
  CHECK(back.dataset_hash == "abc123");
  CHECK(back.folds == s.folds);
  CHECK(splits_to_json(back) == splits_to_json(s));
  CHECK_THROWS_AS(splits_from_json("{\"seed\": 1}"), Error);
}

TEST_CASE("random datasets always satisfy the split invariants") {
  for (std::uint64_t trial = 0; trial < 60; ++trial) {
    Rng rng(derive_seed(777, {trial}));
    const std::size_t k = 2 + rng.below(9);
    const auto samples = make_samples(k + rng.below(60), k + rng.below(60), k + rng.below(60));
    const auto folds = stratified_kfold(samples, k, trial);
    const auto v = validate_splits(folds, samples);
    INFO("trial " << trial << " k " << k);
    CHECK(v.ok());
    std::multiset<std::string> tested;
    for (const auto& f : folds) {
      tested.insert(f.test_ids.begin(), f.test_ids.end());
      std::set<std::string> all(f.train_ids.begin(), f.train_ids.end());
      all.insert(f.val_ids.begin(), f.val_ids.end());
      all.insert(f.test_ids.begin(), f.test_ids.end());
      CHECK(all.size() == samples.size());
      CHECK(f.train_ids.size() + f.val_ids.size() + f.test_ids.size() == samples.size());
    }
    CHECK(tested.size() == samples.size());
    CHECK(std::set<std::string>(tested.begin(), tested.end()).size() == samples.size());
  }
}
