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

#ifndef REPAIRBENCH_PROMPTS_HPP_
#define REPAIRBENCH_PROMPTS_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "repairbench/corpus.hpp"

namespace repairbench::prompts {

enum class PromptMode { ZeroShot, FewShot, Instruct };

std::string_view to_string(PromptMode mode);
PromptMode prompt_mode_from(std::string_view s);

// Template text, version "v1". Chat prompts end with the fixed command line;
// instruct prompts carry the code and the instruction separately.
inline constexpr std::string_view kTemplateVersion = "v1";
inline constexpr std::string_view kCommandLine =
    "Refactor the Buggy Code using the Review without comments.";
inline constexpr std::string_view kSystemText =
    "You are a coding assistant. You generate only the source code.";
inline constexpr std::string_view kInstructionPrefix =
    "Refactor the code using the Review: ";

struct Shot {
  std::string buggy_code;
  std::string review;
  std::string fixed_code;

  bool operator==(const Shot&) const = default;
};

struct Prompt {
  PromptMode mode = PromptMode::ZeroShot;
  std::vector<Shot> shots;   // FewShot only, descending similarity
  std::string body;          // rendered chat text (empty for Instruct)
  std::string system_text;   // empty for Instruct
  std::string code;          // Instruct only: the raw buggy code
  std::string instruction;   // Instruct only

  bool operator==(const Prompt&) const = default;
};

Prompt build_zero_shot(const corpus::RepairSample& sample);

// Shots must come from the Train split (throws ShotFromNonTrainSplit) and
// arrive ordered by descending similarity. Passing fewer or more than three
// renders that many blocks; the caller decides whether to warn.
Prompt build_few_shot(const corpus::RepairSample& sample,
                      const std::vector<corpus::RepairSample>& shots);

Prompt build_instruct(const corpus::RepairSample& sample);

// Audit persistence: one JSON object per line keyed by sample id.
std::string to_json_line(const std::string& sample_id, const Prompt& prompt);
std::pair<std::string, Prompt> from_json_line(std::string_view line);

}  // namespace repairbench::prompts

#endif  // REPAIRBENCH_PROMPTS_HPP_
