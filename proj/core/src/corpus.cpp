// Copyright 2026 The RepairBench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "repairbench/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

#include "repairbench/det_random.hpp"
#include "repairbench/errors.hpp"
#include "repairbench/javatok.hpp"

namespace repairbench::corpus {
namespace {

constexpr std::string_view kStartComment = "|startcomment|";
constexpr std::string_view kEndComment = "|endcomment|";

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

// Finds `marker` as a standalone token (not part of a longer identifier).
std::size_t find_marker(std::string_view text, std::string_view marker,
                        std::size_t from = 0) {
  bool word_like = is_ident_char(marker.front());
  for (std::size_t pos = text.find(marker, from); pos != std::string_view::npos;
       pos = text.find(marker, pos + 1)) {
    if (word_like) {
      bool left_ok = pos == 0 || !is_ident_char(text[pos - 1]);
      std::size_t after = pos + marker.size();
      bool right_ok = after >= text.size() || !is_ident_char(text[after]);
      if (!left_ok || !right_ok) continue;
    }
    return pos;
  }
  return std::string_view::npos;
}

std::pair<std::string_view, std::string_view> markers_for(DatasetKind kind) {
  if (kind == DatasetKind::TufanoStyle) return {"START", "END"};
  return {"|startfocus|", "|endfocus|"};
}

}  // namespace

std::string normalize_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out += ' ';
      pending_space = false;
    }
    out += c;
  }
  return out;
}

FocusRegion focus_region(std::string_view buggy_code, DatasetKind kind) {
  auto [open, close] = markers_for(kind);
  std::size_t open_pos = find_marker(buggy_code, open);
  std::size_t close_pos = find_marker(buggy_code, close);
  if (open_pos == std::string_view::npos ||
      close_pos == std::string_view::npos) {
    throw MissingMarker("focus markers not found in buggy code");
  }
  if (close_pos < open_pos) {
    throw MalformedRecord("closing focus marker precedes the opening one");
  }
  if (find_marker(buggy_code, open, open_pos + open.size()) !=
          std::string_view::npos ||
      find_marker(buggy_code, close, close_pos + close.size()) !=
          std::string_view::npos) {
    throw MalformedRecord("more than one focus marker pair");
  }
  FocusRegion region;
  region.start_offset = open_pos + open.size();
  region.end_offset = close_pos;
  region.body = std::string(
      buggy_code.substr(region.start_offset,
                        region.end_offset - region.start_offset));
  return region;
}

FocusRegion focus_region(const RepairSample& sample) {
  return focus_region(sample.buggy_code, sample.dataset);
}

RepairSample parse_record(const RawRecord& raw, DatasetKind kind) {
  if (raw.code.empty()) throw MalformedRecord("record has no code field");
  if (raw.target.empty() && kind == DatasetKind::TufanoStyle) {
    throw MalformedRecord("record has no target field");
  }

  std::string code = raw.code;
  std::string review;
  if (raw.review) {
    review = *raw.review;
  } else {
    std::size_t open = code.find(kStartComment);
    std::size_t close = code.find(kEndComment);
    if (open == std::string::npos || close == std::string::npos ||
        close < open) {
      throw MissingReview("no |startcomment|/|endcomment| pair in record");
    }
    review = code.substr(open + kStartComment.size(),
                         close - open - kStartComment.size());
    code.erase(open, close + kEndComment.size() - open);
  }

  RepairSample sample;
  sample.id = raw.id;
  sample.dataset = kind;
  sample.buggy_code = normalize_whitespace(code);
  sample.review = normalize_whitespace(review);
  sample.target = normalize_whitespace(raw.target);
  if (kind == DatasetKind::R4RStyle && sample.target.empty()) {
    sample.target = kDeleteToken;  // delete-class targets arrive as whitespace
  }
  if (sample.review.empty()) throw MissingReview("review is empty");
  focus_region(sample.buggy_code, kind);  // enforces the marker invariant
  return sample;
}

RepairSample parse_source_target(std::string_view source_line,
                                 std::string_view target_line,
                                 DatasetKind kind, std::string id) {
  RawRecord raw;
  raw.id = std::move(id);
  raw.code = std::string(source_line);
  raw.target = std::string(target_line);
  return parse_record(raw, kind);
}

std::size_t token_count(const RepairSample& sample) {
  std::size_t code_tokens = javatok::lex(sample.buggy_code).size();
  std::size_t review_terms = 0;
  bool in_term = false;
  for (char c : sample.review) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      in_term = false;
    } else if (!in_term) {
      in_term = true;
      ++review_terms;
    }
  }
  return code_tokens + review_terms;
}

FilterResult filter_by_token_length(std::vector<RepairSample> samples,
                                    std::size_t max_tokens) {
  return filter_by_token_length(
      std::move(samples), max_tokens,
      [](const RepairSample& s) { return token_count(s); });
}

FilterResult filter_by_token_length(std::vector<RepairSample> samples,
                                    std::size_t max_tokens,
                                    const TokenCounter& counter) {
  FilterResult result;
  for (auto& sample : samples) {
    if (counter(sample) <= max_tokens) {
      result.kept.push_back(std::move(sample));
    } else {
      result.removed.push_back(std::move(sample));
    }
  }
  return result;
}

Classification classify_tokens(const std::vector<std::string>& before,
                               const std::vector<std::string>& after) {
  // LCS table; counts of non-common tokens decide the category.
  std::size_t n = before.size(), m = after.size();
  std::vector<std::size_t> prev(m + 1, 0), cur(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      cur[j] = before[i - 1] == after[j - 1]
                   ? prev[j - 1] + 1
                   : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  std::size_t lcs = prev[m];
  std::size_t deletions = n - lcs;
  std::size_t insertions = m - lcs;
  if (deletions == 0 && insertions == 0) {
    return {FixCategory::Update, /*degenerate=*/true};
  }
  if (deletions == 0) return {FixCategory::Insert, false};
  if (insertions == 0) return {FixCategory::Delete, false};
  return {FixCategory::Update, false};
}

Classification classify_fix(const RepairSample& sample) {
  if (sample.dataset == DatasetKind::R4RStyle &&
      normalize_whitespace(sample.target) == kDeleteToken) {
    return {FixCategory::Delete, false};
  }
  std::string before_text;
  if (sample.dataset == DatasetKind::R4RStyle) {
    before_text = focus_region(sample).body;
  } else {
    FocusRegion region = focus_region(sample);
    auto [open, close] = std::pair<std::string_view, std::string_view>{
        "START", "END"};
    std::string code = sample.buggy_code;
    // strip the markers, keep everything else
    std::size_t close_pos = region.end_offset;
    code.erase(close_pos, close.size());
    std::size_t open_pos = region.start_offset - open.size();
    code.erase(open_pos, open.size());
    before_text = code;
  }
  return classify_tokens(javatok::code_token_texts(before_text),
                         javatok::code_token_texts(sample.target));
}

SplitResult split_dataset(std::vector<RepairSample> samples,
                          const SplitSpec& spec) {
  if (!spec.valid()) throw Error("invalid split specification");
  const std::size_t n = samples.size();
  const auto n64 = static_cast<std::int64_t>(n);
  const auto valid_n = static_cast<std::size_t>(spec.valid_num * n64 / spec.denom);
  const auto test_n = static_cast<std::size_t>(spec.test_num * n64 / spec.denom);

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  DetRng rng(spec.seed);
  rng.shuffle(order);

  std::vector<Split> assignment(n, Split::Train);
  for (std::size_t i = 0; i < valid_n; ++i) assignment[order[i]] = Split::Validation;
  for (std::size_t i = valid_n; i < valid_n + test_n; ++i) {
    assignment[order[i]] = Split::Test;
  }

  SplitResult result;
  for (std::size_t i = 0; i < n; ++i) {
    samples[i].split = assignment[i];
    switch (assignment[i]) {
      case Split::Validation:
        result.validation.push_back(std::move(samples[i]));
        break;
      case Split::Test:
        result.test.push_back(std::move(samples[i]));
        break;
      default:
        result.train.push_back(std::move(samples[i]));
        break;
    }
  }
  return result;
}

std::string_view to_string(DatasetKind kind) {
  return kind == DatasetKind::TufanoStyle ? "tufano" : "r4r";
}
std::string_view to_string(FixCategory category) {
  switch (category) {
    case FixCategory::Insert:
      return "insert";
    case FixCategory::Delete:
      return "delete";
    case FixCategory::Update:
      return "update";
    default:
      return "unclassified";
  }
}
std::string_view to_string(Split split) {
  switch (split) {
    case Split::Train:
      return "train";
    case Split::Validation:
      return "validation";
    case Split::Test:
      return "test";
    default:
      return "unassigned";
  }
}

DatasetKind dataset_kind_from(std::string_view s) {
  if (s == "tufano") return DatasetKind::TufanoStyle;
  if (s == "r4r") return DatasetKind::R4RStyle;
  throw MalformedRecord("unknown dataset kind: " + std::string(s));
}
FixCategory category_from(std::string_view s) {
  if (s == "insert") return FixCategory::Insert;
  if (s == "delete") return FixCategory::Delete;
  if (s == "update") return FixCategory::Update;
  if (s == "unclassified") return FixCategory::Unclassified;
  throw MalformedRecord("unknown fix category: " + std::string(s));
}
Split split_from(std::string_view s) {
  if (s == "train") return Split::Train;
  if (s == "validation") return Split::Validation;
  if (s == "test") return Split::Test;
  if (s == "unassigned") return Split::Unassigned;
  throw MalformedRecord("unknown split: " + std::string(s));
}

}  // namespace repairbench::corpus
