// Copyright 2026 The tweetfuse Authors
// SPDX-License-Identifier: Apache-2.0

#include "tweetfuse/report.hpp"

#include <algorithm>
#include <cstdio>

#include <json.hpp>

#include "tweetfuse/digest.hpp"
#include "tweetfuse/error.hpp"

namespace tweetfuse {

using nlohmann::ordered_json;

namespace {

ordered_json aggregate_json(const Aggregate& a) {
  return {{"avg", a.avg}, {"min", a.min}, {"max", a.max}};
}

std::string pct(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", 100.0 * v);
  return buf;
}

}  // namespace

CvReport make_report(std::string name, std::vector<FoldMetrics> folds, std::uint64_t seed,
                     std::string config_digest) {
  if (folds.empty()) throw Error("report '" + name + "': no folds");
  std::sort(folds.begin(), folds.end(),
            [](const FoldMetrics& a, const FoldMetrics& b) { return a.index < b.index; });
  for (std::size_t i = 1; i < folds.size(); ++i) {
    if (folds[i].index == folds[i - 1].index) {
      throw Error("report '" + name + "': fold " + std::to_string(folds[i].index) +
                  " listed twice");
    }
  }
  std::vector<double> acc, f1;
  for (const auto& f : folds) {
    acc.push_back(f.accuracy);
    f1.push_back(f.weighted_f1);
  }
  CvReport r;
  r.name = std::move(name);
  r.accuracy = aggregate(acc);
  r.weighted_f1 = aggregate(f1);
  r.folds = std::move(folds);
  r.seed = seed;
  r.config_digest = std::move(config_digest);
  return r;
}

std::string report_to_json(std::span<const CvReport> reports) {
  ordered_json runs = ordered_json::array();
  for (const auto& r : reports) {
    ordered_json folds = ordered_json::array();
    for (const auto& f : r.folds) {
      folds.push_back(
          {{"index", f.index}, {"accuracy", f.accuracy}, {"weighted_f1", f.weighted_f1}});
    }
    runs.push_back({{"name", r.name},
                    {"folds", folds},
                    {"accuracy", aggregate_json(r.accuracy)},
                    {"weighted_f1", aggregate_json(r.weighted_f1)},
                    {"seed", r.seed},
                    {"config_digest", r.config_digest}});
  }
  return ordered_json{{"runs", runs}}.dump(2) + "\n";
}

std::vector<CvReport> reports_from_json(std::string_view text) {
  std::vector<CvReport> out;
  try {
    const auto doc = nlohmann::json::parse(text);
    for (const auto& run : doc.at("runs")) {
      std::vector<FoldMetrics> folds;
      for (const auto& f : run.at("folds")) {
        folds.push_back({f.at("index").get<std::size_t>(), f.at("accuracy").get<double>(),
                         f.at("weighted_f1").get<double>()});
      }
      out.push_back(make_report(run.at("name").get<std::string>(), std::move(folds),
                                run.at("seed").get<std::uint64_t>(),
                                run.at("config_digest").get<std::string>()));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("report: malformed JSON: ") + e.what());
  }
  return out;
}

std::string report_to_table(std::span<const CvReport> reports) {
  std::size_t width = 8;
  for (const auto& r : reports) width = std::max(width, r.name.size());
  auto cell = [](const std::string& s, std::size_t w) {
    return s + std::string(w > s.size() ? w - s.size() : 0, ' ');
  };
  std::string out;
  out += cell("Features", width) + " | ACC Avg | ACC Min | ACC Max |  F1 Avg |  F1 Min |  F1 Max | Folds\n";
  out += std::string(width, '-') + "-|---------|---------|---------|---------|---------|---------|------\n";
  for (const auto& r : reports) {
    auto num = [](double v) {
      const std::string s = pct(v);
      return std::string(7 > s.size() ? 7 - s.size() : 0, ' ') + s;
    };
    out += cell(r.name, width) + " | " + num(r.accuracy.avg) + " | " + num(r.accuracy.min) +
           " | " + num(r.accuracy.max) + " | " + num(r.weighted_f1.avg) + " | " +
           num(r.weighted_f1.min) + " | " + num(r.weighted_f1.max) + " | " +
           std::to_string(r.folds.size()) + "\n";
  }
  return out;
}

void emit_report(const std::filesystem::path& path, std::span<const CvReport> reports,
                 ReportFormat format) {
  if (reports.empty()) throw Error("report: nothing to emit");
  if (format == ReportFormat::json) {
    write_file(path, report_to_json(reports));
    return;
  }
  write_file(path, report_to_table(reports));
  auto json_path = path;
  json_path += ".json";
  write_file(json_path, report_to_json(reports));
}

}  // namespace tweetfuse
