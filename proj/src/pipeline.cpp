// Copyright 2026 The tweetfuse Authors
// SPDX-License-Identifier: Apache-2.0

#include "tweetfuse/pipeline.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>

#include <json.hpp>

#include "tweetfuse/checkpoint.hpp"
#include "tweetfuse/digest.hpp"
#include "tweetfuse/error.hpp"
#include "tweetfuse/synthetic.hpp"
#include "tweetfuse/trainer.hpp"
#include "tweetfuse/version.hpp"

namespace tweetfuse {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

ordered_json versions() {
  return {{"tweetfuse", kVersion},
          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                        std::to_string(EIGEN_MAJOR_VERSION) + "." +
                        std::to_string(EIGEN_MINOR_VERSION)},
          {"compiler", __VERSION__}};
}

void write_provenance(const fs::path& path, const std::string& command, ordered_json args,
                      std::optional<std::uint64_t> seed, ordered_json inputs) {
  ordered_json doc = {{"command", command}, {"versions", versions()}};
  if (seed) doc["seed"] = *seed;
  doc["config_digest"] = sha256_hex(args.dump());
  doc["args"] = std::move(args);
  doc["inputs"] = std::move(inputs);
  write_file(path, doc.dump(2) + "\n");
}

fs::path sidecar(const fs::path& file) {
  fs::path p = file;
  p += ".provenance.json";
  return p;
}

std::string fold_dir_name(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fold_%02zu", index);
  return buf;
}

std::string default_name(std::span<const EmbeddingMatrix> stores) {
  std::string name;
  for (const auto& s : stores) name += (name.empty() ? "" : "+") + s.name();
  return name;
}

}  // namespace

PooledDataset run_pool(const fs::path& annotations, const fs::path& out) {
  const auto records = read_annotations(annotations);
  PooledDataset dataset = build_dataset(records);
  write_dataset(out, dataset);
  write_provenance(sidecar(out), "pool", {{"annotations", annotations.filename().string()}},
                   std::nullopt, {{"annotations", sha256_file(annotations)}});
  return dataset;
}

SplitFile run_split(const fs::path& dataset_path, std::size_t k, std::uint64_t seed,
                    const fs::path& out) {
  const std::string bytes = read_file(dataset_path);
  const PooledDataset dataset = dataset_from_json(bytes);
  const auto valid = dataset.valid_samples();
  SplitFile splits{seed, k, sha256_hex(bytes), stratified_kfold(valid, k, seed)};
  const auto check = validate_splits(splits.folds, valid);
  if (!check.ok()) throw Error("split: generated folds failed validation: " + check.violations[0].detail);
  write_splits(out, splits);
  write_provenance(sidecar(out), "split", {{"k", k}, {"seed", seed}}, seed,
                   {{"dataset", splits.dataset_hash}});
  return splits;
}

std::vector<FeatureSpec> parse_feature_list(std::string_view text) {
  std::vector<FeatureSpec> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = text.substr(0, comma);
    const auto colon = item.rfind(':');
    if (colon == std::string_view::npos || colon == 0) {
      throw Error("feature list: expected name:dim, got '" + std::string(item) + "'");
    }
    FeatureSpec spec;
    spec.name = std::string(item.substr(0, colon));
    const auto digits = item.substr(colon + 1);
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), spec.dim);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || spec.dim == 0) {
      throw Error("feature list: bad dimension in '" + std::string(item) + "'");
    }
    for (const auto& prev : out) {
      if (prev.name == spec.name) throw Error("feature list: duplicate name '" + spec.name + "'");
    }
    out.push_back(std::move(spec));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (out.empty()) throw Error("feature list is empty");
  return out;
}

void run_synth(std::size_t n_per_class, std::span<const FeatureSpec> features, double separation,
               std::uint64_t seed, const fs::path& out) {
  const SyntheticData data = generate_synthetic(n_per_class, features, separation, seed);
  write_dataset(out / "dataset.json", data.dataset);
  ordered_json spec = ordered_json::array();
  for (const auto& m : data.features) {
    write_store(out / m.name(), m);
    spec.push_back({{"name", m.name()}, {"dim", m.dim()}});
  }
  write_provenance(out / "provenance.json", "synth",
                   {{"n_per_class", n_per_class},
                    {"features", spec},
                    {"separation", separation},
                    {"seed", seed}},
                   seed, ordered_json::object());
}

std::string config_digest(const RunConfig& config) {
  ordered_json doc = {{"name", config.name},
                      {"hyperparameters", json::parse(hyperparameters_json(config))},
                      {"dataset", sha256_file(config.dataset)},
                      {"splits", sha256_file(config.splits)}};
  ordered_json stores = ordered_json::array();
  for (const auto& f : config.features) {
    stores.push_back({{"manifest", sha256_file(f / "manifest.json")},
                      {"ids", sha256_file(f / "ids.txt")},
                      {"data", sha256_file(f / "data.bin")}});
  }
  doc["features"] = stores;
  return sha256_hex(doc.dump());
}

TrainRunSummary run_train(const RunConfig& config, const fs::path& out,
                          std::span<const std::size_t> fold_subset, std::size_t jobs) {
  const std::string dataset_bytes = read_file(config.dataset);
  const PooledDataset dataset = dataset_from_json(dataset_bytes);
  const SplitFile splits = read_splits(config.splits);
  if (splits.dataset_hash != sha256_hex(dataset_bytes)) {
    throw Error("train: splits file was generated from a different dataset.json");
  }
  const auto valid = dataset.valid_samples();
  const auto check = validate_splits(splits.folds, valid);
  if (!check.ok()) throw Error("train: invalid splits: " + check.violations[0].detail);

  std::vector<EmbeddingMatrix> stores;
  for (const auto& f : config.features) stores.push_back(read_store(f));

  std::vector<FoldSpec> selected;
  if (fold_subset.empty()) {
    selected = splits.folds;
  } else {
    for (std::size_t idx : fold_subset) {
      const auto it = std::find_if(splits.folds.begin(), splits.folds.end(),
                                   [&](const FoldSpec& f) { return f.index == idx; });
      if (it == splits.folds.end()) throw Error("train: no fold with index " + std::to_string(idx));
      if (std::any_of(selected.begin(), selected.end(),
                      [&](const FoldSpec& f) { return f.index == idx; })) {
        throw Error("train: fold " + std::to_string(idx) + " selected twice");
      }
      selected.push_back(*it);
    }
  }

  ModelConfig model;
  for (const auto& s : stores) model.feature_dims.push_back(s.dim());
  model.proj_dim = config.proj_dim;
  model.fusion_dim = config.fusion_dim;
  model.dropout_rate = config.dropout_rate;

  TrainRunSummary summary;
  summary.name = config.name.empty() ? default_name(stores) : config.name;
  RunConfig named = config;
  named.name = summary.name;
  summary.config_digest = config_digest(named);

  const ordered_json run_record = {{"name", summary.name},
                                   {"seed", config.train.seed},
                                   {"config_digest", summary.config_digest},
                                   {"k", splits.k},
                                   {"hyperparameters", json::parse(hyperparameters_json(config))},
                                   {"versions", versions()}};
  fs::create_directories(out);
  const fs::path run_json = out / "run.json";
  if (fs::exists(run_json)) {
    const json existing = json::parse(read_file(run_json));
    if (existing.value("config_digest", "") != summary.config_digest) {
      throw Error("train: '" + out.string() + "' holds a run with a different config");
    }
  }
  write_file(run_json, run_record.dump(2) + "\n");

  const auto results = run_cv(selected, dataset, stores, model, config.train, jobs);

  ordered_json fold_list = ordered_json::array();
  for (const auto& r : results) {
    const fs::path dir = out / fold_dir_name(r.fold_index);
    save_checkpoint(dir, {model, r.best_params, config.train.seed, r.best_epoch, r.best_val_loss});

    ordered_json epochs = ordered_json::array();
    for (const auto& e : r.history) {
      epochs.push_back({{"epoch", e.epoch},
                        {"train_loss", e.train_loss},
                        {"val_loss", e.val_loss},
                        {"lr", e.lr}});
    }
    const ordered_json history = {{"fold", r.fold_index},
                                  {"best_epoch", r.best_epoch},
                                  {"best_val_loss", r.best_val_loss},
                                  {"epochs", epochs}};
    write_file(dir / "history.json", history.dump(2) + "\n");

    const ordered_json metrics = {{"fold", r.fold_index},
                                  {"accuracy", r.test_accuracy},
                                  {"weighted_f1", r.test_weighted_f1},
                                  {"test_size", r.test_ids.size()}};
    write_file(dir / "metrics.json", metrics.dump(2) + "\n");
    summary.folds.push_back({r.fold_index, r.test_accuracy, r.test_weighted_f1});
    fold_list.push_back(r.fold_index);
  }

  ordered_json inputs = {{"dataset", sha256_hex(dataset_bytes)},
                         {"splits", sha256_file(config.splits)}};
  write_provenance(out / "provenance.json", "train",
                   {{"hyperparameters", json::parse(hyperparameters_json(config))},
                    {"folds", fold_list}},
                   config.train.seed, inputs);
  return summary;
}

std::vector<CvReport> collect_reports(std::span<const fs::path> run_dirs) {
  struct Pending {
    std::string name;
    std::uint64_t seed = 0;
    std::string digest;
    std::map<std::size_t, FoldMetrics> folds;
  };
  std::vector<Pending> runs;
  for (const auto& dir : run_dirs) {
    json run;
    try {
      run = json::parse(read_file(dir / "run.json"));
    } catch (const json::exception& e) {
      throw Error("report: malformed run.json in '" + dir.string() + "': " + e.what());
    }
    Pending p{run.at("name").get<std::string>(), run.at("seed").get<std::uint64_t>(),
              run.at("config_digest").get<std::string>(), {}};
    auto it = std::find_if(runs.begin(), runs.end(), [&](const Pending& q) {
      return q.name == p.name && q.digest == p.digest;
    });
    if (it == runs.end()) it = runs.insert(runs.end(), std::move(p));

    std::vector<fs::path> fold_dirs;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.is_directory() && fs::exists(entry.path() / "metrics.json")) {
        fold_dirs.push_back(entry.path());
      }
    }
    std::sort(fold_dirs.begin(), fold_dirs.end());
    for (const auto& fd : fold_dirs) {
      const json m = json::parse(read_file(fd / "metrics.json"));
      const FoldMetrics fm{m.at("fold").get<std::size_t>(), m.at("accuracy").get<double>(),
                           m.at("weighted_f1").get<double>()};
      const auto [pos, inserted] = it->folds.emplace(fm.index, fm);
      if (!inserted && (pos->second.accuracy != fm.accuracy ||
                        pos->second.weighted_f1 != fm.weighted_f1)) {
        throw Error("report: conflicting results for fold " + std::to_string(fm.index) +
                    " of run '" + it->name + "'");
      }
    }
  }
  std::vector<CvReport> reports;
  for (auto& p : runs) {
    std::vector<FoldMetrics> folds;
    for (const auto& [_, f] : p.folds) folds.push_back(f);
    reports.push_back(make_report(p.name, std::move(folds), p.seed, p.digest));
  }
  return reports;
}

std::vector<CvReport> run_report(std::span<const fs::path> run_dirs, ReportFormat format,
                                 const fs::path& out) {
  auto reports = collect_reports(run_dirs);
  emit_report(out, reports, format);
  ordered_json digests = ordered_json::array();
  for (const auto& r : reports) digests.push_back(r.config_digest);
  write_provenance(sidecar(out), "report",
                   {{"format", format == ReportFormat::json ? "json" : "table"}},
                   std::nullopt, {{"runs", digests}});
  return reports;
}

}  // namespace tweetfuse
