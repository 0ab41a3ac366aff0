// Copyright 2026 The tweetfuse Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "support/temp_dir.hpp"
#include "tweetfuse/digest.hpp"
#include "tweetfuse/embedding_store.hpp"
#include "tweetfuse/rng.hpp"

using namespace tweetfuse;
using tweetfuse::testing::TempDir;

namespace {

EmbeddingMatrix random_matrix(const std::string& name, std::size_t count, std::size_t dim,
                              std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < count; ++i) ids.push_back(name + "_" + std::to_string(i));
  std::vector<float> data(count * dim);
  for (auto& v : data) v = static_cast<float>(rng.normal() * 10.0);
  return EmbeddingMatrix({name, dim, count}, std::move(ids), std::move(data));
}

}  // namespace

TEST_CASE("write/read round trip is bit-exact, including awkward floats") {
  TempDir tmp("store");
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const std::size_t count = 1 + rng.below(6);
    const std::size_t dim = 1 + rng.below(40);
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < count; ++i) ids.push_back("id" + std::to_string(rng.below(1u << 30)) + "_" + std::to_string(i));
    std::vector<float> data(count * dim);
    for (auto& v : data) {
      // Random finite bit patterns: exponent field != 0xff.
      std::uint32_t bits = 0;
      do {
        bits = static_cast<std::uint32_t>(rng.next());
      } while (((bits >> 23) & 0xffu) == 0xffu);
      v = std::bit_cast<float>(bits);
    }
    data[0] = -0.0f;
    const EmbeddingMatrix m({"feat", dim, count}, ids, data);
    const auto dir = tmp / ("s" + std::to_string(seed));
    write_store(dir, m);
    CHECK(read_store(dir) == m);
  }
}

TEST_CASE("two-row 512-wide store reads back identically") {
  TempDir tmp("store");
  const auto m = random_matrix("clip_image", 2, 512, 1);
  write_store(tmp.path(), m.spec(), {"a", "b"}, std::vector<float>(m.data().begin(), m.data().end()));
  const auto back = read_store(tmp.path());
  CHECK(back.ids() == std::vector<std::string>{"a", "b"});
  CHECK(std::equal(back.data().begin(), back.data().end(), m.data().begin()));
}

TEST_CASE("on-disk layout matches the documented format") {
  TempDir tmp("store");
  write_store(tmp.path(), {"object", 2, 2}, {"1021", "7"}, {1.0f, -2.0f, 0.5f, 0.0f});

  const auto manifest = nlohmann::json::parse(read_file(tmp / "manifest.json"));
  CHECK(manifest.at("feature") == "object");
  CHECK(manifest.at("dim") == 2);
  CHECK(manifest.at("count") == 2);
  CHECK(manifest.at("dtype") == "f32le");
  CHECK(manifest.at("ids_file") == "ids.txt");
  CHECK(manifest.at("data_file") == "data.bin");

  CHECK(read_file(tmp / "ids.txt") == "1021\n7\n");
  const std::string blob = read_file(tmp / "data.bin");
  REQUIRE(blob.size() == 16);
  // 1.0f = 0x3f800000, -2.0f = 0xc0000000, little-endian.
  CHECK(blob.substr(0, 4) == std::string("\x00\x00\x80\x3f", 4));
  CHECK(blob.substr(4, 4) == std::string("\x00\x00\x00\xc0", 4));
}

TEST_CASE("manifest records the canonical feature widths") {
  TempDir tmp("store");
  write_store(tmp / "object", random_matrix("object", 3, 2048, 2));
  CHECK(nlohmann::json::parse(read_file(tmp / "object" / "manifest.json")).at("dim") == 2048);
  write_store(tmp / "text", random_matrix("roberta_text", 3, 768, 3));
  CHECK(read_store(tmp / "text").dim() == 768);
}

TEST_CASE("all-zero rows are ordinary rows") {
  TempDir tmp("store");
  std::vector<float> data(2 * 512, 0.0f);
  data[512] = 1.0f;
  write_store(tmp.path(), {"face", 512, 2}, {"noface", "face"}, data);
  const auto back = read_store(tmp.path());
  CHECK(std::all_of(back.row(0).begin(), back.row(0).end(), [](float v) { return v == 0.0f; }));
}

TEST_CASE("invalid matrices are rejected") {
  CHECK_THROWS_AS(EmbeddingMatrix({"f", 2, 1}, {"a"}, {1.0f, std::numeric_limits<float>::quiet_NaN()}), Error);
  CHECK_THROWS_AS(EmbeddingMatrix({"f", 2, 1}, {"a"}, {1.0f, std::numeric_limits<float>::infinity()}), Error);
  CHECK_THROWS_AS(EmbeddingMatrix({"f", 2, 2}, {"a", "a"}, {1, 2, 3, 4}), Error);
  CHECK_THROWS_AS(EmbeddingMatrix({"f", 2, 2}, {"a", "b"}, {1, 2, 3}), Error);
  CHECK_THROWS_AS(EmbeddingMatrix({"f", 0, 0}, {}, {}), Error);
  CHECK_THROWS_AS(EmbeddingMatrix({"", 1, 0}, {}, {}), Error);
  CHECK_THROWS_AS(EmbeddingMatrix({"f", 1, 2}, {"a"}, {1}), Error);

  TempDir tmp("store");
  CHECK_THROWS_AS(write_store(tmp.path(), {"f", 1, 1}, {"a"}, {std::numeric_limits<float>::quiet_NaN()}), Error);
  CHECK_FALSE(std::filesystem::exists(tmp / "manifest.json"));
}

TEST_CASE("read_store detects damaged stores") {
  TempDir tmp("store");
  const auto m = random_matrix("f", 4, 3, 9);

  SUBCASE("data truncated by 4 bytes") {
    write_store(tmp.path(), m);
    std::string blob = read_file(tmp / "data.bin");
    blob.resize(blob.size() - 4);
    write_file(tmp / "data.bin", blob);
    CHECK_THROWS_WITH_AS(read_store(tmp.path()), doctest::Contains("bytes"), Error);
  }
  SUBCASE("missing manifest") {
    CHECK_THROWS_AS(read_store(tmp.path()), Error);
  }
  SUBCASE("corrupt manifest") {
    write_store(tmp.path(), m);
    write_file(tmp / "manifest.json", "{\"feature\": \"f\", \"dim\": ");
    CHECK_THROWS_AS(read_store(tmp.path()), Error);
  }
  SUBCASE("wrong dtype") {
    write_store(tmp.path(), m);
    auto j = nlohmann::json::parse(read_file(tmp / "manifest.json"));
    j["dtype"] = "f64le";
    write_file(tmp / "manifest.json", j.dump());
    CHECK_THROWS_AS(read_store(tmp.path()), Error);
  }
  SUBCASE("duplicate ids on disk") {
    write_store(tmp.path(), m);
    write_file(tmp / "ids.txt", "x\nx\ny\nz\n");
    CHECK_THROWS_AS(read_store(tmp.path()), Error);
  }
  SUBCASE("id count differs from manifest") {
    write_store(tmp.path(), m);
    write_file(tmp / "ids.txt", "x\ny\n");
    CHECK_THROWS_AS(read_store(tmp.path()), Error);
  }
}

TEST_CASE("unwritable path is an error") {
  TempDir tmp("store");
  write_file(tmp / "blocker", "file, not a directory");
  CHECK_THROWS_AS(write_store(tmp / "blocker" / "store", random_matrix("f", 1, 1, 0)), Error);
}

TEST_CASE("align: identity, permutation, missing id") {
  const std::vector<float> face_data = {1, 1, 2, 2, 3, 3};
  const EmbeddingMatrix face({"face", 2, 3}, {"a", "b", "c"}, face_data);
  const EmbeddingMatrix text({"text", 1, 3}, {"c", "a", "b"}, {30, 10, 20});

  SUBCASE("identity order leaves the matrix unchanged") {
    const std::vector<EmbeddingMatrix> in = {face};
    const auto out = align(in, face.ids());
    CHECK(out[0] == face);
  }
  SUBCASE("shuffled stores are re-ordered to the common order") {
    const std::vector<std::string> order = {"b", "c", "a"};
    const std::vector<EmbeddingMatrix> in = {face, text};
    const auto out = align(in, order);
    for (std::size_t k = 0; k < order.size(); ++k) {
      CHECK(out[0].ids()[k] == order[k]);
      CHECK(out[1].ids()[k] == order[k]);
    }
    CHECK(out[0].row(0)[0] == 2.0f);
    CHECK(out[1].row(0)[0] == 20.0f);
    CHECK(out[1].row(2)[0] == 10.0f);
    CHECK(out[0].dim() == 2);
    CHECK(out[1].dim() == 1);
  }
  SUBCASE("an id absent from one store names the store and the id") {
    const std::vector<EmbeddingMatrix> in = {text, EmbeddingMatrix({"face", 2, 2}, {"a", "b"}, {1, 1, 2, 2})};
    const std::vector<std::string> order = {"a", "c"};
    try {
      align(in, order);
      FAIL("expected MissingIdError");
    } catch (const MissingIdError& e) {
      CHECK(e.feature() == "face");
      CHECK(e.id() == "c");
    }
  }
}

TEST_CASE("align preserves the multiset of rows") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto m = random_matrix("f", 25, 4, seed);
    std::vector<std::string> order = m.ids();
    Rng rng(seed + 100);
    shuffle(std::span<std::string>(order), rng);
    const std::vector<EmbeddingMatrix> in = {m};
    const auto out = align(in, order);
    auto rows_of = [](const EmbeddingMatrix& x) {
      std::vector<std::vector<float>> rows;
      for (std::size_t i = 0; i < x.count(); ++i) rows.emplace_back(x.row(i).begin(), x.row(i).end());
      std::sort(rows.begin(), rows.end());
      return rows;
    };
    CHECK(rows_of(out[0]) == rows_of(m));
    for (std::size_t k = 0; k < order.size(); ++k) {
      const auto src = m.row(*m.find(order[k]));
      CHECK(std::equal(src.begin(), src.end(), out[0].row(k).begin()));
    }
  }
}
