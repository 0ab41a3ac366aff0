// Copyright 2026 The tweetfuse Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <sstream>

#include "support/oracles.hpp"
#include "support/temp_dir.hpp"
#include "tweetfuse/dataset.hpp"
#include "tweetfuse/error.hpp"

using namespace tweetfuse;

namespace {
constexpr Sentiment NEG = Sentiment::negative;
constexpr Sentiment NEU = Sentiment::neutral;
constexpr Sentiment POS = Sentiment::positive;

std::optional<Sentiment> modality(std::initializer_list<Sentiment> votes) {
  const std::vector<Sentiment> v(votes);
  return pool_modality(v);
}
}  // namespace

TEST_CASE("class indices are fixed") {
  CHECK(class_index(NEG) == 0);
  CHECK(class_index(NEU) == 1);
  CHECK(class_index(POS) == 2);
  CHECK(parse_sentiment("Positive") == POS);
  CHECK_FALSE(parse_sentiment("happy").has_value());
}

TEST_CASE("pool_modality examples") {
  CHECK(modality({POS, POS, NEU}) == POS);
  CHECK(modality({NEU}) == NEU);
  CHECK_FALSE(modality({POS, NEG, NEU}).has_value());
  CHECK_THROWS_AS(modality({}), Error);
  CHECK_THROWS_AS(modality({POS, POS}), Error);
}

TEST_CASE("pool_modality agrees with a vote counter on all 27 triples") {
  int checked = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        const std::vector<Sentiment> votes = {sentiment_from_index(a), sentiment_from_index(b),
                                              sentiment_from_index(c)};
        const auto expected = oracle::vote_majority({a, b, c});
        const auto got = pool_modality(votes);
        REQUIRE(got.has_value() == expected.has_value());
        if (got) CHECK(static_cast<int>(class_index(*got)) == *expected);
        ++checked;
      }
  CHECK(checked == 27);
}

TEST_CASE("pool_pair examples") {
  CHECK(pool_pair(POS, POS) == POS);
  CHECK(pool_pair(NEU, NEG) == NEG);
  CHECK_FALSE(pool_pair(POS, NEG).has_value());
}

TEST_CASE("pool_pair follows the three cases on all 9 pairs and is symmetric") {
  for (Sentiment a : kAllSentiments) {
    for (Sentiment b : kAllSentiments) {
      std::optional<Sentiment> expected;
      if (a == b) expected = a;                                      // same label
      else if (a == NEU) expected = b;                               // polar over neutral
      else if (b == NEU) expected = a;
      // otherwise opposite polarity: conflict
      CHECK(pool_pair(a, b) == expected);
      CHECK(pool_pair(a, b) == pool_pair(b, a));
    }
  }
}

TEST_CASE("build_dataset statuses") {
  SUBCASE("single opposite-polarity record is a conflict") {
    const std::vector<AnnotationRecord> r = {{"1", {POS}, {NEG}}};
    const auto ds = build_dataset(r);
    CHECK(ds.counts.valid == 0);
    CHECK(ds.counts.conflict_filtered == 1);
    CHECK(ds.samples[0].status == PoolStatus::conflict_filtered);
    CHECK_FALSE(ds.samples[0].label.has_value());
  }
  SUBCASE("no majority in a modality is filtered") {
    const std::vector<AnnotationRecord> r = {{"1", {POS, NEG, NEU}, {POS, POS, POS}}};
    const auto ds = build_dataset(r);
    CHECK(ds.samples[0].status == PoolStatus::no_majority_filtered);
    CHECK(ds.counts.no_majority_filtered == 1);
  }
  SUBCASE("duplicate ids are rejected") {
    const std::vector<AnnotationRecord> r = {{"1", {POS}, {POS}}, {"1", {NEG}, {NEG}}};
    CHECK_THROWS_AS(build_dataset(r), Error);
  }
  SUBCASE("mismatched annotator counts are rejected") {
    const std::vector<AnnotationRecord> r = {{"1", {POS}, {POS, POS, POS}}};
    CHECK_THROWS_AS(build_dataset(r), Error);
  }
}

TEST_CASE("build_dataset output size equals input size and statuses partition it") {
  std::vector<AnnotationRecord> records;
  int id = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int t = 0; t < 3; ++t) {
          records.push_back({std::to_string(id++),
                             {sentiment_from_index(a), sentiment_from_index(b), sentiment_from_index(c)},
                             {sentiment_from_index(t), sentiment_from_index(t), sentiment_from_index(b)}});
        }
  const auto ds = build_dataset(records);
  CHECK(ds.samples.size() == records.size());
  CHECK(ds.counts.valid + ds.counts.conflict_filtered + ds.counts.no_majority_filtered == records.size());
  CHECK(ds.counts.per_class[0] + ds.counts.per_class[1] + ds.counts.per_class[2] == ds.counts.valid);
  for (const auto& s : ds.samples) CHECK((s.status == PoolStatus::valid) == s.label.has_value());
}

TEST_CASE("annotation parser handles both published layouts") {
  SUBCASE("single annotator, tab separated, with header") {
    std::istringstream in("ID\ttext,image\n1\tneutral,negative\n2\tpositive,positive\n3\tpositive,negative\n");
    const auto records = parse_annotations(in);
    REQUIRE(records.size() == 3);
    CHECK(records[0].sample_id == "1");
    CHECK(records[0].text_labels == std::vector<Sentiment>{NEU});
    CHECK(records[0].image_labels == std::vector<Sentiment>{NEG});
    const auto ds = build_dataset(records);
    CHECK(ds.counts.valid == 2);
    CHECK(ds.counts.per_class[0] == 1);
    CHECK(ds.counts.per_class[2] == 1);
    CHECK(ds.counts.conflict_filtered == 1);
  }
  SUBCASE("three annotators, comma separated, no header") {
    std::istringstream in("10,positive,neutral,positive,positive,neutral,positive\r\n");
    const auto records = parse_annotations(in);
    REQUIRE(records.size() == 1);
    CHECK(records[0].text_labels == std::vector<Sentiment>{POS, POS, NEU});
    CHECK(records[0].image_labels == std::vector<Sentiment>{NEU, POS, POS});
    CHECK(build_dataset(records).samples[0].label == POS);
  }
  SUBCASE("malformed lines are errors") {
    std::istringstream bad_count("1\tpositive,positive\n2\tpositive\n");
    CHECK_THROWS_AS(parse_annotations(bad_count), Error);
    std::istringstream bad_label("1\tpositive,positive\n2\tpositive,great\n");
    CHECK_THROWS_AS(parse_annotations(bad_label), Error);
  }
}

TEST_CASE("dataset.json round trip") {
  tweetfuse::testing::TempDir tmp("ds");
  const std::vector<AnnotationRecord> r = {{"a", {POS}, {NEU}}, {"b", {POS}, {NEG}},
                                           {"c", {NEG, NEG, NEU}, {NEU, NEU, NEU}}};
  const auto ds = build_dataset(r);
  write_dataset(tmp / "dataset.json", ds);
  const auto back = read_dataset(tmp / "dataset.json");
  REQUIRE(back.samples.size() == 3);
  CHECK(back.samples[0].label == POS);
  CHECK(back.samples[1].status == PoolStatus::conflict_filtered);
  CHECK(back.samples[2].label == NEG);
  CHECK(back.counts.per_class == ds.counts.per_class);
  CHECK(dataset_to_json(back) == dataset_to_json(ds));
  CHECK_THROWS_AS(dataset_from_json("{\"samples\": [{\"id\": \"x\", \"label\": null, \"status\": \"valid\"}]}"), Error);
}
