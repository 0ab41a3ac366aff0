// Copyright 2026 The tweetfuse Authors
// SPDX-License-Identifier: Apache-2.0

#include "tweetfuse/checkpoint.hpp"

#include <bit>
#include <cstdint>

#include <json.hpp>

#include "tweetfuse/digest.hpp"
#include "tweetfuse/error.hpp"

namespace tweetfuse {

namespace fs = std::filesystem;
using nlohmann::json;

void save_checkpoint(const fs::path& dir, const Checkpoint& ck) {
  ck.params.check_shapes(ck.config);
  const json manifest = {
      {"config",
       {{"feature_dims", ck.config.feature_dims},
        {"proj_dim", ck.config.proj_dim},
        {"fusion_dim", ck.config.fusion_dim},
        {"n_classes", ck.config.n_classes},
        {"dropout_rate", ck.config.dropout_rate}}},
      {"seed", ck.seed},
      {"epoch", ck.epoch},
      {"val_loss", ck.val_loss},
      {"dtype", "f32le"},
      {"params_file", "params.bin"},
      {"parameter_count", ck.params.parameter_count()},
      {"order", "per feature: proj weight (row-major), proj bias; fusion weight, fusion bias; "
                "head weight, head bias"}};

  std::string blob;
  blob.reserve(ck.params.parameter_count() * 4);
  for (auto t : ck.params.tensors()) {
    for (double v : t) {
      const auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(v));
      for (int b = 0; b < 4; ++b) blob.push_back(static_cast<char>((bits >> (8 * b)) & 0xffu));
    }
  }
  write_file(dir / "params.bin", blob);
  write_file(dir / "checkpoint.json", manifest.dump(2) + "\n");
}

Checkpoint load_checkpoint(const fs::path& dir) {
  Checkpoint ck;
  try {
    const json m = json::parse(read_file(dir / "checkpoint.json"));
    const auto& c = m.at("config");
    ck.config.feature_dims = c.at("feature_dims").get<std::vector<std::size_t>>();
    ck.config.proj_dim = c.at("proj_dim").get<std::size_t>();
    ck.config.fusion_dim = c.at("fusion_dim").get<std::size_t>();
    ck.config.n_classes = c.at("n_classes").get<std::size_t>();
    ck.config.dropout_rate = c.at("dropout_rate").get<double>();
    ck.seed = m.at("seed").get<std::uint64_t>();
    ck.epoch = m.at("epoch").get<std::size_t>();
    ck.val_loss = m.at("val_loss").get<double>();
    if (m.at("dtype").get<std::string>() != "f32le") throw Error("checkpoint: unsupported dtype");
  } catch (const json::exception& e) {
    throw Error(std::string("checkpoint: malformed manifest: ") + e.what());
  }
  ck.params = ModelParams::zeros(ck.config);
  const std::string blob = read_file(dir / "params.bin");
  if (blob.size() != ck.params.parameter_count() * 4) {
    throw Error("checkpoint: params.bin has " + std::to_string(blob.size()) +
                " bytes, expected " + std::to_string(ck.params.parameter_count() * 4));
  }
  std::size_t off = 0;
  for (auto t : ck.params.tensors()) {
    for (double& v : t) {
      std::uint32_t bits = 0;
      for (int b = 0; b < 4; ++b) {
        bits |= static_cast<std::uint32_t>(static_cast<unsigned char>(blob[off + b])) << (8 * b);
      }
      v = std::bit_cast<float>(bits);
      off += 4;
    }
  }
  if (!ck.params.all_finite()) throw Error("checkpoint: non-finite parameter");
  return ck;
}

}  // namespace tweetfuse
