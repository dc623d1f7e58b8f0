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

#include "repairbench/prompts.hpp"

#include <string>
#include <vector>

#include <doctest.h>

#include "repairbench/errors.hpp"

using namespace repairbench;
using namespace repairbench::prompts;

namespace {

corpus::RepairSample make_sample(std::string id, corpus::Split split) {
  corpus::RepairSample sample;
  sample.id = std::move(id);
  sample.dataset = corpus::DatasetKind::TufanoStyle;
  sample.buggy_code = "START result = rule; END";
  sample.review = "Just return rule.";
  sample.target = "return rule;";
  sample.split = split;
  return sample;
}

}  // namespace

TEST_CASE("prompts: zero-shot reproduces the block layout") {
  auto sample = make_sample("s1", corpus::Split::Test);
  Prompt prompt = build_zero_shot(sample);
  CHECK(prompt.mode == PromptMode::ZeroShot);
  CHECK(prompt.body ==
        "Buggy Code:\nSTART result = rule; END\nReview: Just return rule.\n"
        "Refactor the Buggy Code using the Review without comments.");
  CHECK(prompt.system_text ==
        "You are a coding assistant. You generate only the source code.");
  CHECK(prompt.shots.empty());
}

TEST_CASE("prompts: zero-shot body always ends with the command line") {
  for (const char* review : {"a", "Fix the loop.", "use `equals` not =="}) {
    auto sample = make_sample("s", corpus::Split::Test);
    sample.review = review;
    Prompt prompt = build_zero_shot(sample);
    auto pos = prompt.body.rfind('\n');
    REQUIRE(pos != std::string::npos);
    CHECK(prompt.body.substr(pos + 1) == kCommandLine);
  }
}

TEST_CASE("prompts: few-shot renders one block per shot plus the tail") {
  auto sample = make_sample("query", corpus::Split::Test);
  std::vector<corpus::RepairSample> shots = {
      make_sample("t1", corpus::Split::Train),
      make_sample("t2", corpus::Split::Train),
      make_sample("t3", corpus::Split::Train),
  };
  shots[0].review = "just return this";
  shots[1].review = "Just return rule.";
  shots[2].review = "Can't we just rely on @Rule?";

  Prompt prompt = build_few_shot(sample, shots);
  CHECK(prompt.mode == PromptMode::FewShot);
  REQUIRE(prompt.shots.size() == 3);
  CHECK(prompt.shots[0].review == "just return this");

  // three "Fixed Code:" labels from the shots, none from the tail
  std::size_t labels = 0;
  for (std::size_t pos = prompt.body.find("Fixed Code:");
       pos != std::string::npos; pos = prompt.body.find("Fixed Code:", pos + 1)) {
    ++labels;
  }
  CHECK(labels == 3);

  // tail equals the zero-shot body
  std::string tail = build_zero_shot(sample).body;
  REQUIRE(prompt.body.size() >= tail.size());
  CHECK(prompt.body.substr(prompt.body.size() - tail.size()) == tail);
}

TEST_CASE("prompts: few-shot with no shots degenerates to zero-shot") {
  auto sample = make_sample("query", corpus::Split::Test);
  Prompt few = build_few_shot(sample, {});
  Prompt zero = build_zero_shot(sample);
  CHECK(few.body == zero.body);
  CHECK(few.system_text == zero.system_text);
}

TEST_CASE("prompts: two shots render two blocks") {
  auto sample = make_sample("query", corpus::Split::Test);
  std::vector<corpus::RepairSample> shots = {
      make_sample("t1", corpus::Split::Train),
      make_sample("t2", corpus::Split::Train),
  };
  Prompt prompt = build_few_shot(sample, shots);
  CHECK(prompt.shots.size() == 2);
}

TEST_CASE("prompts: shots outside the train split are rejected") {
  auto sample = make_sample("query", corpus::Split::Test);
  std::vector<corpus::RepairSample> shots = {
      make_sample("t1", corpus::Split::Train),
      make_sample("bad", corpus::Split::Test),
  };
  CHECK_THROWS_AS(build_few_shot(sample, shots), ShotFromNonTrainSplit);
}

TEST_CASE("prompts: instruct carries code and instruction separately") {
  auto sample = make_sample("s1", corpus::Split::Test);
  Prompt prompt = build_instruct(sample);
  CHECK(prompt.mode == PromptMode::Instruct);
  CHECK(prompt.code == sample.buggy_code);
  CHECK(prompt.instruction ==
        "Refactor the code using the Review: Just return rule.");
  CHECK(prompt.body.empty());
  CHECK(prompt.system_text.empty());
}

TEST_CASE("prompts: rendering is a pure function of its inputs") {
  auto sample = make_sample("s1", corpus::Split::Test);
  auto shots = std::vector<corpus::RepairSample>{
      make_sample("t1", corpus::Split::Train)};
  CHECK(build_zero_shot(sample) == build_zero_shot(sample));
  CHECK(build_few_shot(sample, shots) == build_few_shot(sample, shots));
  CHECK(build_instruct(sample) == build_instruct(sample));
}

TEST_CASE("prompts: audit lines round-trip") {
  auto sample = make_sample("s1", corpus::Split::Test);
  auto shots = std::vector<corpus::RepairSample>{
      make_sample("t1", corpus::Split::Train)};
  Prompt prompt = build_few_shot(sample, shots);
  auto [id, parsed] = from_json_line(to_json_line("s1", prompt));
  CHECK(id == "s1");
  CHECK(parsed == prompt);
}
