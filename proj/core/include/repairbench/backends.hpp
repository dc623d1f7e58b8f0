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

#ifndef REPAIRBENCH_BACKENDS_HPP_
#define REPAIRBENCH_BACKENDS_HPP_

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "repairbench/prompts.hpp"

namespace repairbench::backends {

// Defaults mirror the generation settings this harness standardizes on:
// temperature 0 for deterministic output, top_p 1, both penalties 0.
struct GenerationParams {
  double temperature = 0.0;
  double top_p = 1.0;
  double frequency_penalty = 0.0;
  double presence_penalty = 0.0;
  int n_candidates = 1;
};

struct Prediction {
  std::string sample_id;
  int rank = 1;  // 1-based, contiguous per (sample, backend)
  std::string raw_text;
  std::string cleaned_text;  // filled later by the cleaner stage
  std::string backend_name;
  double latency_ms = 0.0;
};

std::string to_json_line(const Prediction& prediction);
Prediction prediction_from_json_line(std::string_view line);

enum class BackendKind { Chat, Edit, Mock };

class Backend {
 public:
  virtual ~Backend() = default;
  virtual const std::string& name() const = 0;
  virtual BackendKind kind() const = 0;

  // Returns n_candidates predictions in rank order. Remote transports retry
  // with exponential backoff and throw BackendExhausted once retries are
  // spent; prompt/backed mismatches throw IncompatiblePromptMode.
  virtual std::vector<Prediction> generate(const std::string& sample_id,
                                           const prompts::Prompt& prompt,
                                           const GenerationParams& params) = 0;
};

inline constexpr std::string_view kApiKeyEnvVar = "REPAIRBENCH_API_KEY";

struct RemoteConfig {
  std::string name;
  std::string model;
  std::string base_url;  // e.g. "https://api.openai.com" or "http://host:port"
  std::string api_path;  // defaulted per kind when empty
  int max_retries = 3;
  int backoff_initial_ms = 250;
  int max_concurrency = 4;  // in-flight request cap per backend
};

// Chat-completion endpoint: POST {model, messages, temperature, top_p,
// frequency_penalty, presence_penalty, n}; reads choices[i].message.content.
std::unique_ptr<Backend> make_chat_backend(RemoteConfig config);

// Code-edit endpoint: POST {model, input, instruction, temperature, top_p};
// reads choices[i].text.
std::unique_ptr<Backend> make_edit_backend(RemoteConfig config);

// Offline mocks keyed by sample id. The oracle answers with the stored target
// text; the echo mock answers with the stored focus body.
std::unique_ptr<Backend> make_oracle_backend(
    std::string name, std::map<std::string, std::string> targets_by_id);
std::unique_ptr<Backend> make_echo_backend(
    std::string name, std::map<std::string, std::string> focus_by_id);

class BackendRegistry {
 public:
  void add(std::unique_ptr<Backend> backend);
  Backend& get(const std::string& name) const;
  bool contains(const std::string& name) const;
  std::vector<std::string> names() const;

 private:
  std::map<std::string, std::unique_ptr<Backend>> backends_;
};

}  // namespace repairbench::backends

#endif  // REPAIRBENCH_BACKENDS_HPP_
