// Copyright 2026 The tweetfuse Authors
// SPDX-License-Identifier: Apache-2.0

#include "tweetfuse/run_config.hpp"

#include <set>

#include <json.hpp>

#include "tweetfuse/digest.hpp"
#include "tweetfuse/error.hpp"

namespace tweetfuse {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const char* where) {
  if (!obj.is_object()) throw Error(std::string("run config: '") + where + "' must be an object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.contains(key)) {
      throw Error(std::string("run config: unknown key '") + key + "' in " + where);
    }
  }
}

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

template <typename T>
void read_opt(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

}  // namespace

RunConfig parse_run_config(std::string_view text, const fs::path& base) {
  RunConfig cfg;
  try {
    const json doc = json::parse(text);
    reject_unknown(doc, {"name", "dataset", "splits", "features", "preset", "model", "train",
                         "output"},
                   "config");
    read_opt(doc, "name", cfg.name);
    cfg.dataset = resolve(base, doc.at("dataset").get<std::string>());
    cfg.splits = resolve(base, doc.at("splits").get<std::string>());
    for (const auto& f : doc.at("features")) cfg.features.push_back(resolve(base, f.get<std::string>()));
    if (cfg.features.empty()) throw Error("run config: 'features' is empty");
    if (doc.contains("output")) cfg.output = resolve(base, doc.at("output").get<std::string>());

    if (doc.contains("preset")) {
      const auto preset = doc.at("preset").get<std::string>();
      if (preset == "mvsa_s") {
        cfg.train.batch_size = 32;
        cfg.train.smoothing_alpha = 0.0;
      } else if (preset == "mvsa_m") {
        cfg.train.batch_size = 128;
        cfg.train.smoothing_alpha = 0.1;
      } else {
        throw Error("run config: unknown preset '" + preset + "'");
      }
    }

    if (doc.contains("model")) {
      const auto& m = doc.at("model");
      reject_unknown(m, {"proj_dim", "fusion_dim", "dropout"}, "model");
      read_opt(m, "proj_dim", cfg.proj_dim);
      read_opt(m, "fusion_dim", cfg.fusion_dim);
      read_opt(m, "dropout", cfg.dropout_rate);
    }
    if (doc.contains("train")) {
      const auto& t = doc.at("train");
      reject_unknown(t, {"lr", "epochs", "batch_size", "smoothing_alpha", "plateau_patience",
                         "lr_decay_factor", "adam_beta1", "adam_beta2", "adam_eps", "seed"},
                     "train");
      read_opt(t, "lr", cfg.train.lr);
      read_opt(t, "epochs", cfg.train.epochs);
      read_opt(t, "batch_size", cfg.train.batch_size);
      read_opt(t, "smoothing_alpha", cfg.train.smoothing_alpha);
      read_opt(t, "plateau_patience", cfg.train.plateau_patience);
      read_opt(t, "lr_decay_factor", cfg.train.lr_decay_factor);
      read_opt(t, "adam_beta1", cfg.train.adam.beta1);
      read_opt(t, "adam_beta2", cfg.train.adam.beta2);
      read_opt(t, "adam_eps", cfg.train.adam.eps);
      read_opt(t, "seed", cfg.train.seed);
    }
  } catch (const json::exception& e) {
    throw Error(std::string("run config: ") + e.what());
  }
  cfg.train.validate();
  if (cfg.proj_dim == 0 || cfg.fusion_dim == 0) throw Error("run config: layer widths must be positive");
  if (!(cfg.dropout_rate >= 0.0 && cfg.dropout_rate < 1.0)) {
    throw Error("run config: dropout must be in [0, 1)");
  }
  return cfg;
}

RunConfig load_run_config(const fs::path& path) {
  return parse_run_config(read_file(path), path.parent_path());
}

std::string hyperparameters_json(const RunConfig& c) {
  const json doc = {
      {"model", {{"proj_dim", c.proj_dim}, {"fusion_dim", c.fusion_dim}, {"dropout", c.dropout_rate}}},
      {"train",
       {{"lr", c.train.lr},
        {"epochs", c.train.epochs},
        {"batch_size", c.train.batch_size},
        {"smoothing_alpha", c.train.smoothing_alpha},
        {"plateau_patience", c.train.plateau_patience},
        {"lr_decay_factor", c.train.lr_decay_factor},
        {"adam_beta1", c.train.adam.beta1},
        {"adam_beta2", c.train.adam.beta2},
        {"adam_eps", c.train.adam.eps},
        {"seed", c.train.seed}}}};
  return doc.dump();
}

}  // namespace tweetfuse
