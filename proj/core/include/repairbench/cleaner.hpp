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

#ifndef REPAIRBENCH_CLEANER_HPP_
#define REPAIRBENCH_CLEANER_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace repairbench::cleaner {

// Keyword lists are extensible through config; the defaults stay limited to
// the patterns the heuristics were designed for. Matching is case-insensitive.
struct HeuristicConfig {
  std::vector<std::string> title_keywords = {
      "Refactored Code", "Corrected Code", "Updated Code", "Fixed Code"};
  std::vector<std::string> explanation_keywords = {"Explanation", "Reasoning",
                                                   "Changes Made"};
};

struct TraceEntry {
  std::string heuristic;   // "H5", "H3", "H4", "H2", "H1"
  std::size_t before_len = 0;
  std::size_t after_len = 0;
};

struct CleaningTrace {
  std::vector<TraceEntry> applied;  // always the full pipeline, in order
};

// H5: strips leading/trailing markdown fences. A language tag on the opening
// fence line is consumed with the fence; a tag on its own line is left for H3.
std::string h5_strip_backticks(std::string_view text);

// H3: drops a first non-blank line that is the standalone word "java".
std::string h3_strip_lang_prefix(std::string_view text);

// H4: drops a leading title line from the keyword list (optional colon) and
// removes echoed focus markers.
std::string h4_strip_redundant(std::string_view text,
                               const HeuristicConfig& config = {});

// H2: truncates at the first line that begins with an explanation keyword.
std::string h2_strip_explanation(std::string_view text,
                                 const HeuristicConfig& config = {});

// H1: whitespace normalization, same contract as corpus::normalize_whitespace.
std::string h1_adjust_space(std::string_view text);

struct CleanResult {
  std::string cleaned_text;
  CleaningTrace trace;
};

// Full pipeline in the order H5, H3, H4, H2, H1. Total on arbitrary bytes.
CleanResult clean(std::string_view raw_text, const HeuristicConfig& config = {});

}  // namespace repairbench::cleaner

#endif  // REPAIRBENCH_CLEANER_HPP_
