// Copyright 2026 The tweetfuse Authors
// SPDX-License-Identifier: Apache-2.0

#include "tweetfuse/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <ostream>

#include <CLI11.hpp>

#include "tweetfuse/error.hpp"
#include "tweetfuse/pipeline.hpp"
#include "tweetfuse/version.hpp"

namespace tweetfuse::cli {

namespace fs = std::filesystem;

namespace {

fs::path default_out(const std::string& given, const char* fallback) {
  if (!given.empty()) return given;
  const char* root = std::getenv(kOutRootEnv);
  return fs::path(root && *root ? root : ".") / fallback;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Late-fusion multimodal sentiment classification toolkit", "tweetfuse"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string annotations, pool_out;
  auto* pool = app.add_subcommand("pool", "Pool per-annotator labels into dataset.json");
  pool->add_option("--annotations", annotations, "labelResultAll-style annotation file")
      ->required()
      ->check(CLI::ExistingFile);
  pool->add_option("--out", pool_out, "Output dataset.json");

  std::string split_dataset, split_out;
  std::size_t k = 10;
  std::uint64_t split_seed = 0;
  auto* split = app.add_subcommand("split", "Generate stratified k-fold splits");
  split->add_option("--dataset", split_dataset, "dataset.json")->required()->check(CLI::ExistingFile);
  split->add_option("--k", k, "Number of folds")->capture_default_str()->check(CLI::Range(2, 1000000));
  split->add_option("--seed", split_seed, "Shuffle seed")->required();
  split->add_option("--out", split_out, "Output splits.json");

  std::size_t synth_n = 0;
  std::string synth_features, synth_out;
  double separation = 0.0;
  std::uint64_t synth_seed = 0;
  auto* synth = app.add_subcommand("synth", "Write a synthetic labelled fixture");
  synth->add_option("--n", synth_n, "Samples per class")->required()->check(CLI::PositiveNumber);
  synth->add_option("--features", synth_features, "name:dim[,name:dim...]")->required();
  synth->add_option("--separation", separation, "Class mean offset")->required()->check(CLI::NonNegativeNumber);
  synth->add_option("--seed", synth_seed, "Generator seed")->required();
  synth->add_option("--out", synth_out, "Output directory");

  std::string config_path, train_out;
  std::vector<std::size_t> folds;
  std::size_t jobs = 1;
  auto* train = app.add_subcommand("train", "Train and evaluate cross-validation folds");
  train->add_option("--config", config_path, "Run config JSON")->required()->check(CLI::ExistingFile);
  train->add_option("--out", train_out, "Run output directory (overrides config 'output')");
  train->add_option("--folds", folds, "Subset of fold indices, e.g. 0,3,7")->delimiter(',');
  train->add_option("--jobs", jobs, "Folds trained concurrently")->capture_default_str()->check(CLI::PositiveNumber);

  std::vector<std::string> run_dirs;
  std::string format = "json", report_out;
  auto* report = app.add_subcommand("report", "Aggregate fold metrics into a report");
  report->add_option("--runs", run_dirs, "Run directories")->required()->check(CLI::ExistingDirectory);
  report->add_option("--format", format, "json or table")
      ->capture_default_str()
      ->check(CLI::IsMember({"json", "table"}));
  report->add_option("--out", report_out, "Output file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (pool->parsed()) {
      const fs::path dst = default_out(pool_out, "dataset.json");
      const auto ds = run_pool(annotations, dst);
      out << "pooled " << ds.samples.size() << " records: " << ds.counts.valid << " valid ("
          << ds.counts.per_class[0] << " negative, " << ds.counts.per_class[1] << " neutral, "
          << ds.counts.per_class[2] << " positive), " << ds.counts.conflict_filtered
          << " conflicts, " << ds.counts.no_majority_filtered << " without majority -> "
          << dst.string() << "\n";
    } else if (split->parsed()) {
      const fs::path dst = default_out(split_out, "splits.json");
      const auto s = run_split(split_dataset, k, split_seed, dst);
      out << "wrote " << s.folds.size() << " folds -> " << dst.string() << "\n";
    } else if (synth->parsed()) {
      const fs::path dst = default_out(synth_out, "synth");
      const auto specs = parse_feature_list(synth_features);
      run_synth(synth_n, specs, separation, synth_seed, dst);
      out << "wrote synthetic fixture (" << 3 * synth_n << " samples, " << specs.size()
          << " features) -> " << dst.string() << "\n";
    } else if (train->parsed()) {
      const RunConfig cfg = load_run_config(config_path);
      fs::path dst = !train_out.empty() ? fs::path(train_out)
                     : !cfg.output.empty() ? cfg.output
                                           : default_out("", "train");
      const auto summary = run_train(cfg, dst, folds, jobs);
      for (const auto& f : summary.folds) {
        out << "fold " << f.index << ": accuracy " << f.accuracy << ", weighted F1 "
            << f.weighted_f1 << "\n";
      }
      out << "run '" << summary.name << "' -> " << dst.string() << "\n";
    } else if (report->parsed()) {
      const fs::path dst = default_out(report_out, format == "json" ? "report.json" : "report.txt");
      std::vector<fs::path> dirs(run_dirs.begin(), run_dirs.end());
      const auto reports =
          run_report(dirs, format == "json" ? ReportFormat::json : ReportFormat::table, dst);
      out << report_to_table(reports);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitOk;
}

}  // namespace tweetfuse::cli
