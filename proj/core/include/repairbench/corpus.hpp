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

#ifndef REPAIRBENCH_CORPUS_HPP_
#define REPAIRBENCH_CORPUS_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace repairbench::corpus {

enum class DatasetKind { TufanoStyle, R4RStyle };
enum class FixCategory { Insert, Delete, Update, Unclassified };
enum class Split { Train, Validation, Test, Unassigned };

// Focus-region replacement target for R4R-style deletes.
inline constexpr std::string_view kDeleteToken = "|del|";

// One (buggy code, review, fix) triple. buggy_code keeps its focus markers:
// START/END for TufanoStyle, |startfocus|/|endfocus| for R4RStyle. The target
// is the whole fixed method for TufanoStyle and the focus-region replacement
// for R4RStyle.
struct RepairSample {
  std::string id;
  DatasetKind dataset = DatasetKind::TufanoStyle;
  std::string buggy_code;
  std::string review;
  std::string target;
  FixCategory category = FixCategory::Unclassified;
  Split split = Split::Unassigned;

  bool operator==(const RepairSample&) const = default;
};

struct FocusRegion {
  std::size_t start_offset = 0;  // first char after the opening marker
  std::size_t end_offset = 0;    // first char of the closing marker
  std::string body;              // exact substring between the markers
};

// Split fractions as integer rationals over a common denominator so that
// "sums to exactly 1" is checkable without floating point.
struct SplitSpec {
  std::int64_t train_num = 90;
  std::int64_t valid_num = 5;
  std::int64_t test_num = 5;
  std::int64_t denom = 100;
  std::uint64_t seed = 0;

  static SplitSpec percent(std::int64_t train, std::int64_t valid,
                           std::int64_t test, std::uint64_t seed = 0) {
    return SplitSpec{train, valid, test, 100, seed};
  }
  bool valid() const {
    return denom > 0 && train_num >= 0 && valid_num >= 0 && test_num >= 0 &&
           train_num + valid_num + test_num == denom;
  }
};

// Collapses every whitespace run to one space and trims the ends.
std::string normalize_whitespace(std::string_view text);

// Structured input record (layout (b) of the corpus interface).
struct RawRecord {
  std::string id;
  std::string code;
  std::optional<std::string> review;  // absent when inlined in `code`
  std::string target;
};

// Builds a RepairSample from a raw record. The review may arrive either as a
// field or inline in the code between |startcomment| / |endcomment|; inline
// tags are stripped from the stored buggy code. Throws MissingMarker,
// MissingReview or MalformedRecord.
RepairSample parse_record(const RawRecord& raw, DatasetKind kind);

// Layout (a): a source line with the review inline, paired with a target line.
RepairSample parse_source_target(std::string_view source_line,
                                 std::string_view target_line,
                                 DatasetKind kind, std::string id);

// Locates the dataset's focus markers in buggy_code. Throws MissingMarker /
// MalformedRecord when the exactly-one-pair invariant does not hold.
FocusRegion focus_region(std::string_view buggy_code, DatasetKind kind);
FocusRegion focus_region(const RepairSample& sample);

// Lexical token count of the buggy code plus whitespace-separated review
// terms. Model subword tokenizers count differently; callers can swap in
// their own counter through the filter overload below.
std::size_t token_count(const RepairSample& sample);

using TokenCounter = std::function<std::size_t(const RepairSample&)>;

struct FilterResult {
  std::vector<RepairSample> kept;
  std::vector<RepairSample> removed;
};

FilterResult filter_by_token_length(std::vector<RepairSample> samples,
                                    std::size_t max_tokens = 512);
FilterResult filter_by_token_length(std::vector<RepairSample> samples,
                                    std::size_t max_tokens,
                                    const TokenCounter& counter);

struct Classification {
  FixCategory category = FixCategory::Unclassified;
  bool degenerate = false;  // empty token diff, labeled Update and flagged
};

// Token-level LCS diff classification of a (before, after) token pair.
Classification classify_tokens(const std::vector<std::string>& before,
                               const std::vector<std::string>& after);

// Classifies a sample: R4RStyle compares the focus body against the target
// (|del| forces Delete), TufanoStyle compares the marker-stripped buggy code
// against the target.
Classification classify_fix(const RepairSample& sample);

struct SplitResult {
  std::vector<RepairSample> train;
  std::vector<RepairSample> validation;
  std::vector<RepairSample> test;
};

// Deterministic split: validation and test sizes are floor(frac * N); the
// leftover goes to train. Samples keep their relative order inside each
// subset.
SplitResult split_dataset(std::vector<RepairSample> samples,
                          const SplitSpec& spec);

// --- canonical sample store (one JSON object per line) ---

std::string to_json_line(const RepairSample& sample);
RepairSample from_json_line(std::string_view line);

std::vector<RepairSample> load_store(const std::filesystem::path& path);
void save_store(const std::filesystem::path& path,
                const std::vector<RepairSample>& samples);

std::string_view to_string(DatasetKind kind);
std::string_view to_string(FixCategory category);
std::string_view to_string(Split split);
DatasetKind dataset_kind_from(std::string_view s);
FixCategory category_from(std::string_view s);
Split split_from(std::string_view s);

}  // namespace repairbench::corpus

#endif  // REPAIRBENCH_CORPUS_HPP_
