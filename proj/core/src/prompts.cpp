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

#include <json.hpp>

#include "repairbench/errors.hpp"

namespace repairbench::prompts {

using nlohmann::json;

std::string_view to_string(PromptMode mode) {
  switch (mode) {
    case PromptMode::ZeroShot:
      return "zero-shot";
    case PromptMode::FewShot:
      return "few-shot";
    default:
      return "instruct";
  }
}

PromptMode prompt_mode_from(std::string_view s) {
  if (s == "zero-shot") return PromptMode::ZeroShot;
  if (s == "few-shot") return PromptMode::FewShot;
  if (s == "instruct") return PromptMode::Instruct;
  throw Error("unknown prompt mode: " + std::string(s));
}

namespace {

std::string zero_shot_body(const corpus::RepairSample& sample) {
  std::string body = "Buggy Code:\n";
  body += sample.buggy_code;
  body += "\nReview: ";
  body += sample.review;
  body += '\n';
  body += kCommandLine;
  return body;
}

}  // namespace

Prompt build_zero_shot(const corpus::RepairSample& sample) {
  Prompt prompt;
  prompt.mode = PromptMode::ZeroShot;
  prompt.body = zero_shot_body(sample);
  prompt.system_text = kSystemText;
  return prompt;
}

Prompt build_few_shot(const corpus::RepairSample& sample,
                      const std::vector<corpus::RepairSample>& shots) {
  Prompt prompt;
  prompt.mode = PromptMode::FewShot;
  prompt.system_text = kSystemText;
  std::string body;
  for (const corpus::RepairSample& shot : shots) {
    if (shot.split != corpus::Split::Train) {
      throw ShotFromNonTrainSplit("few-shot example " + shot.id +
                                  " is not from the training split");
    }
    body += "Buggy Code:\n";
    body += shot.buggy_code;
    body += "\nReview: ";
    body += shot.review;
    body += "\nFixed Code: ";
    body += shot.target;
    body += "\n\n";
    prompt.shots.push_back(Shot{shot.buggy_code, shot.review, shot.target});
  }
  body += zero_shot_body(sample);
  prompt.body = std::move(body);
  return prompt;
}

Prompt build_instruct(const corpus::RepairSample& sample) {
  Prompt prompt;
  prompt.mode = PromptMode::Instruct;
  prompt.code = sample.buggy_code;
  prompt.instruction = std::string(kInstructionPrefix) + sample.review;
  return prompt;
}

std::string to_json_line(const std::string& sample_id, const Prompt& prompt) {
  json j;
  j["sample_id"] = sample_id;
  j["mode"] = to_string(prompt.mode);
  j["body"] = prompt.body;
  j["system_text"] = prompt.system_text;
  j["code"] = prompt.code;
  j["instruction"] = prompt.instruction;
  j["template_version"] = kTemplateVersion;
  json shots = json::array();
  for (const Shot& shot : prompt.shots) {
    shots.push_back({{"buggy_code", shot.buggy_code},
                     {"review", shot.review},
                     {"fixed_code", shot.fixed_code}});
  }
  j["shots"] = std::move(shots);
  return j.dump();
}

std::pair<std::string, Prompt> from_json_line(std::string_view line) {
  json j = json::parse(line);
  Prompt prompt;
  prompt.mode = prompt_mode_from(j.at("mode").get<std::string>());
  prompt.body = j.at("body").get<std::string>();
  prompt.system_text = j.at("system_text").get<std::string>();
  prompt.code = j.at("code").get<std::string>();
  prompt.instruction = j.at("instruction").get<std::string>();
  for (const auto& shot : j.at("shots")) {
    prompt.shots.push_back(Shot{shot.at("buggy_code").get<std::string>(),
                                shot.at("review").get<std::string>(),
                                shot.at("fixed_code").get<std::string>()});
  }
  return {j.at("sample_id").get<std::string>(), std::move(prompt)};
}

}  // namespace repairbench::prompts
