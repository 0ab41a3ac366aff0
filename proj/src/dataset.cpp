// Copyright 2026 The tweetfuse Authors
// SPDX-License-Identifier: Apache-2.0

#include "tweetfuse/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <unordered_set>

#include <json.hpp>

#include "tweetfuse/digest.hpp"
#include "tweetfuse/error.hpp"

namespace tweetfuse {

using nlohmann::json;

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_polar(Sentiment s) { return s != Sentiment::neutral; }

void tally(ClassCounts& counts, const PooledSample& s) {
  switch (s.status) {
    case PoolStatus::valid:
      ++counts.valid;
      ++counts.per_class[class_index(*s.label)];
      break;
    case PoolStatus::conflict_filtered:
      ++counts.conflict_filtered;
      break;
    case PoolStatus::no_majority_filtered:
      ++counts.no_majority_filtered;
      break;
  }
}

}  // namespace

Sentiment sentiment_from_index(std::size_t index) {
  if (index >= kNumClasses) throw Error("class index out of range: " + std::to_string(index));
  return static_cast<Sentiment>(index);
}

std::string_view to_string(Sentiment s) {
  switch (s) {
    case Sentiment::negative: return "negative";
    case Sentiment::neutral: return "neutral";
    case Sentiment::positive: return "positive";
  }
  return "?";
}

std::optional<Sentiment> parse_sentiment(std::string_view text) {
  const std::string t = lower(trim(text));
  for (Sentiment s : kAllSentiments) {
    if (t == to_string(s)) return s;
  }
  return std::nullopt;
}

std::string_view to_string(PoolStatus s) {
  switch (s) {
    case PoolStatus::valid: return "valid";
    case PoolStatus::conflict_filtered: return "conflict_filtered";
    case PoolStatus::no_majority_filtered: return "no_majority_filtered";
  }
  return "?";
}

std::optional<PoolStatus> parse_pool_status(std::string_view text) {
  for (PoolStatus s : {PoolStatus::valid, PoolStatus::conflict_filtered,
                       PoolStatus::no_majority_filtered}) {
    if (text == to_string(s)) return s;
  }
  return std::nullopt;
}

std::vector<PooledSample> PooledDataset::valid_samples() const {
  std::vector<PooledSample> out;
  out.reserve(counts.valid);
  std::copy_if(samples.begin(), samples.end(), std::back_inserter(out),
               [](const PooledSample& s) { return s.status == PoolStatus::valid; });
  return out;
}

std::optional<Sentiment> pool_modality(std::span<const Sentiment> votes) {
  if (votes.size() == 1) return votes[0];
  if (votes.size() != 3) {
    throw Error("pool_modality: expected 1 or 3 votes, got " + std::to_string(votes.size()));
  }
  std::array<int, kNumClasses> tally{};
  for (Sentiment v : votes) ++tally[class_index(v)];
  for (std::size_t c = 0; c < kNumClasses; ++c) {
    if (tally[c] >= 2) return sentiment_from_index(c);
  }
  return std::nullopt;
}

std::optional<Sentiment> pool_pair(Sentiment image, Sentiment text) {
  if (image == text) return image;
  if (!is_polar(image)) return text;
  if (!is_polar(text)) return image;
  return std::nullopt;
}

PooledDataset build_dataset(std::span<const AnnotationRecord> records) {
  PooledDataset out;
  out.samples.reserve(records.size());
  std::unordered_set<std::string> seen;
  for (const auto& r : records) {
    if (!seen.insert(r.sample_id).second) {
      throw Error("duplicate sample id '" + r.sample_id + "'");
    }
    if (r.image_labels.size() != r.text_labels.size()) {
      throw Error("sample '" + r.sample_id + "': image/text annotator counts differ");
    }
    PooledSample s{r.sample_id, std::nullopt, PoolStatus::valid};
    const auto image = pool_modality(r.image_labels);
    const auto text = pool_modality(r.text_labels);
    if (!image || !text) {
      s.status = PoolStatus::no_majority_filtered;
    } else if (auto label = pool_pair(*image, *text)) {
      s.label = *label;
    } else {
      s.status = PoolStatus::conflict_filtered;
    }
    tally(out.counts, s);
    out.samples.push_back(std::move(s));
  }
  return out;
}

std::vector<AnnotationRecord> parse_annotations(std::istream& in) {
  std::vector<AnnotationRecord> records;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    std::replace(line.begin(), line.end(), '\t', ',');
    std::vector<std::string_view> fields;
    std::string_view rest = line;
    while (true) {
      const auto comma = rest.find(',');
      fields.push_back(trim(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    while (!fields.empty() && fields.back().empty()) fields.pop_back();
    if (fields.empty()) continue;

    const bool is_first = std::exchange(first, false);
    if (is_first && (fields.size() < 2 || !parse_sentiment(fields[1]))) continue;  // header

    const std::size_t n_labels = fields.size() - 1;
    if (n_labels != 2 && n_labels != 6) {
      throw Error("annotations line " + std::to_string(line_no) +
                  ": expected 1 or 3 text,image pairs");
    }
    AnnotationRecord r;
    r.sample_id = std::string(fields[0]);
    for (std::size_t i = 1; i < fields.size(); i += 2) {
      const auto text = parse_sentiment(fields[i]);
      const auto image = parse_sentiment(fields[i + 1]);
      if (!text || !image) {
        throw Error("annotations line " + std::to_string(line_no) + ": unknown label");
      }
      r.text_labels.push_back(*text);
      r.image_labels.push_back(*image);
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<AnnotationRecord> read_annotations(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open annotations '" + path.string() + "'");
  return parse_annotations(in);
}

std::string dataset_to_json(const PooledDataset& dataset) {
  json samples = json::array();
  for (const auto& s : dataset.samples) {
    samples.push_back({{"id", s.sample_id},
                       {"label", s.label ? json(to_string(*s.label)) : json(nullptr)},
                       {"status", to_string(s.status)}});
  }
  json counts = json::object();
  for (Sentiment c : kAllSentiments) {
    counts[std::string(to_string(c))] = dataset.counts.per_class[class_index(c)];
  }
  counts["valid"] = dataset.counts.valid;
  counts["conflict_filtered"] = dataset.counts.conflict_filtered;
  counts["no_majority_filtered"] = dataset.counts.no_majority_filtered;
  return json{{"samples", samples}, {"counts", counts}}.dump(1) + "\n";
}

PooledDataset dataset_from_json(std::string_view text) {
  PooledDataset out;
  std::unordered_set<std::string> seen;
  try {
    const json doc = json::parse(text);
    for (const auto& item : doc.at("samples")) {
      PooledSample s;
      s.sample_id = item.at("id").get<std::string>();
      const auto status = parse_pool_status(item.at("status").get<std::string>());
      if (!status) throw Error("dataset: unknown status for '" + s.sample_id + "'");
      s.status = *status;
      const auto& label = item.at("label");
      if (!label.is_null()) {
        const auto parsed = parse_sentiment(label.get<std::string>());
        if (!parsed) throw Error("dataset: unknown label for '" + s.sample_id + "'");
        s.label = *parsed;
      }
      if ((s.status == PoolStatus::valid) != s.label.has_value()) {
        throw Error("dataset: sample '" + s.sample_id + "' label/status mismatch");
      }
      if (!seen.insert(s.sample_id).second) {
        throw Error("dataset: duplicate sample id '" + s.sample_id + "'");
      }
      tally(out.counts, s);
      out.samples.push_back(std::move(s));
    }
  } catch (const json::exception& e) {
    throw Error(std::string("dataset: malformed JSON: ") + e.what());
  }
  return out;
}

void write_dataset(const std::filesystem::path& path, const PooledDataset& dataset) {
  write_file(path, dataset_to_json(dataset));
}

PooledDataset read_dataset(const std::filesystem::path& path) {
  return dataset_from_json(read_file(path));
}

}  // namespace tweetfuse
