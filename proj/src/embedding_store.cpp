// Copyright 2026 The tweetfuse Authors
// SPDX-License-Identifier: Apache-2.0

#include "tweetfuse/embedding_store.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tweetfuse/digest.hpp"

namespace tweetfuse {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kManifest = "manifest.json";
constexpr const char* kDtype = "f32le";

void store_f32le(float v, char* out) {
  auto bits = std::bit_cast<std::uint32_t>(v);
  for (int b = 0; b < 4; ++b) out[b] = static_cast<char>((bits >> (8 * b)) & 0xffu);
}

float load_f32le(const char* in) {
  std::uint32_t bits = 0;
  for (int b = 0; b < 4; ++b) {
    bits |= static_cast<std::uint32_t>(static_cast<unsigned char>(in[b])) << (8 * b);
  }
  return std::bit_cast<float>(bits);
}

bool plain_filename(const std::string& name) {
  return !name.empty() && name.find('/') == std::string::npos &&
         name.find('\\') == std::string::npos && name != "." && name != "..";
}

}  // namespace

EmbeddingMatrix::EmbeddingMatrix(FeatureSpec spec, std::vector<std::string> ids,
                                 std::vector<float> data)
    : spec_(std::move(spec)), ids_(std::move(ids)), data_(std::move(data)) {
  if (spec_.name.empty()) throw Error("feature name must be non-empty");
  if (spec_.dim == 0) throw Error("feature '" + spec_.name + "': dim must be positive");
  if (ids_.size() != spec_.count) {
    throw Error("feature '" + spec_.name + "': " + std::to_string(ids_.size()) +
                " ids for count " + std::to_string(spec_.count));
  }
  if (data_.size() != spec_.count * spec_.dim) {
    throw Error("feature '" + spec_.name + "': data has " + std::to_string(data_.size()) +
                " values, expected " + std::to_string(spec_.count) + "x" +
                std::to_string(spec_.dim));
  }
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (!std::isfinite(data_[i])) {
      throw Error("feature '" + spec_.name + "': non-finite value at row " +
                  std::to_string(i / spec_.dim) + ", column " +
                  std::to_string(i % spec_.dim));
    }
  }
  index_.reserve(ids_.size());
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    const std::string& id = ids_[i];
    if (id.empty() || id.find('\n') != std::string::npos) {
      throw Error("feature '" + spec_.name + "': invalid id at row " + std::to_string(i));
    }
    if (!index_.emplace(id, i).second) {
      throw Error("feature '" + spec_.name + "': duplicate id '" + id + "'");
    }
  }
}

std::optional<std::size_t> EmbeddingMatrix::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool operator==(const EmbeddingMatrix& a, const EmbeddingMatrix& b) {
  if (a.spec_.name != b.spec_.name || a.spec_.dim != b.spec_.dim ||
      a.spec_.count != b.spec_.count || a.ids_ != b.ids_) {
    return false;
  }
  // Bitwise, so that -0.0f and 0.0f are told apart.
  return a.data_.size() == b.data_.size() &&
         std::memcmp(a.data_.data(), b.data_.data(), a.data_.size() * sizeof(float)) == 0;
}

MissingIdError::MissingIdError(std::string feature, std::string id)
    : Error("id '" + id + "' missing from feature '" + feature + "'"),
      feature_(std::move(feature)),
      id_(std::move(id)) {}

void write_store(const fs::path& dir, const EmbeddingMatrix& matrix) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create store directory '" + dir.string() + "': " + ec.message());

  json manifest = {{"feature", matrix.name()},
                   {"dim", matrix.dim()},
                   {"count", matrix.count()},
                   {"dtype", kDtype},
                   {"ids_file", "ids.txt"},
                   {"data_file", "data.bin"}};

  std::string ids;
  for (const auto& id : matrix.ids()) {
    ids += id;
    ids += '\n';
  }

  std::string blob(matrix.data().size() * 4, '\0');
  for (std::size_t i = 0; i < matrix.data().size(); ++i) {
    store_f32le(matrix.data()[i], blob.data() + 4 * i);
  }

  write_file(dir / "ids.txt", ids);
  write_file(dir / "data.bin", blob);
  write_file(dir / kManifest, manifest.dump(2) + "\n");
}

void write_store(const fs::path& dir, const FeatureSpec& spec, std::vector<std::string> ids,
                 std::vector<float> data) {
  write_store(dir, EmbeddingMatrix(spec, std::move(ids), std::move(data)));
}

EmbeddingMatrix read_store(const fs::path& dir) {
  const fs::path manifest_path = dir / kManifest;
  if (!fs::exists(manifest_path)) {
    throw Error("store '" + dir.string() + "': missing " + kManifest);
  }
  json manifest;
  try {
    manifest = json::parse(read_file(manifest_path));
  } catch (const json::parse_error& e) {
    throw Error("store '" + dir.string() + "': corrupt manifest: " + e.what());
  }

  FeatureSpec spec;
  std::string ids_file;
  std::string data_file;
  try {
    if (manifest.at("dtype").get<std::string>() != kDtype) {
      throw Error("store '" + dir.string() + "': unsupported dtype '" +
                  manifest.at("dtype").get<std::string>() + "'");
    }
    spec.name = manifest.at("feature").get<std::string>();
    const auto dim = manifest.at("dim").get<std::int64_t>();
    const auto count = manifest.at("count").get<std::int64_t>();
    if (dim <= 0 || count < 0) {
      throw Error("store '" + dir.string() + "': invalid dim/count in manifest");
    }
    spec.dim = static_cast<std::size_t>(dim);
    spec.count = static_cast<std::size_t>(count);
    ids_file = manifest.at("ids_file").get<std::string>();
    data_file = manifest.at("data_file").get<std::string>();
  } catch (const json::exception& e) {
    throw Error("store '" + dir.string() + "': corrupt manifest: " + e.what());
  }
  if (!plain_filename(ids_file) || !plain_filename(data_file)) {
    throw Error("store '" + dir.string() + "': ids_file/data_file must be plain file names");
  }

  const std::string id_text = read_file(dir / ids_file);
  std::vector<std::string> ids;
  ids.reserve(spec.count);
  std::size_t pos = 0;
  while (pos < id_text.size()) {
    const std::size_t nl = id_text.find('\n', pos);
    if (nl == std::string::npos) {
      throw Error("store '" + dir.string() + "': ids file not LF-terminated");
    }
    ids.emplace_back(id_text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  if (ids.size() != spec.count) {
    throw Error("store '" + dir.string() + "': " + std::to_string(ids.size()) +
                " ids but manifest count " + std::to_string(spec.count));
  }

  const std::string blob = read_file(dir / data_file);
  const std::size_t expected = spec.count * spec.dim * 4;
  if (blob.size() != expected) {
    throw Error("store '" + dir.string() + "': data file has " + std::to_string(blob.size()) +
                " bytes, expected " + std::to_string(expected));
  }
  std::vector<float> data(spec.count * spec.dim);
  for (std::size_t i = 0; i < data.size(); ++i) data[i] = load_f32le(blob.data() + 4 * i);

  return EmbeddingMatrix(std::move(spec), std::move(ids), std::move(data));
}

std::vector<EmbeddingMatrix> align(std::span<const EmbeddingMatrix> matrices,
                                   std::span<const std::string> order) {
  std::vector<EmbeddingMatrix> out;
  out.reserve(matrices.size());
  for (const auto& m : matrices) {
    std::vector<float> data;
    data.reserve(order.size() * m.dim());
    for (const auto& id : order) {
      const auto row = m.find(id);
      if (!row) throw MissingIdError(m.name(), id);
      const auto values = m.row(*row);
      data.insert(data.end(), values.begin(), values.end());
    }
    FeatureSpec spec = m.spec();
    spec.count = order.size();
    out.emplace_back(std::move(spec), std::vector<std::string>(order.begin(), order.end()),
                     std::move(data));
  }
  return out;
}

}  // namespace tweetfuse
