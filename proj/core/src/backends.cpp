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

#include "repairbench/backends.hpp"

#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <mutex>
#include <thread>
#include <utility>

#include <httplib.h>
#include <json.hpp>

#include "repairbench/errors.hpp"

namespace repairbench::backends {

using nlohmann::json;

std::string to_json_line(const Prediction& prediction) {
  json j;
  j["sample_id"] = prediction.sample_id;
  j["rank"] = prediction.rank;
  j["raw_text"] = prediction.raw_text;
  j["cleaned_text"] = prediction.cleaned_text;
  j["backend_name"] = prediction.backend_name;
  j["latency_ms"] = prediction.latency_ms;
  return j.dump();
}

Prediction prediction_from_json_line(std::string_view line) {
  json j = json::parse(line);
  Prediction p;
  p.sample_id = j.at("sample_id").get<std::string>();
  p.rank = j.at("rank").get<int>();
  p.raw_text = j.at("raw_text").get<std::string>();
  p.cleaned_text = j.value("cleaned_text", "");
  p.backend_name = j.at("backend_name").get<std::string>();
  p.latency_ms = j.value("latency_ms", 0.0);
  return p;
}

namespace {

void ensure_mode(BackendKind kind, prompts::PromptMode mode,
                 const std::string& backend_name) {
  using prompts::PromptMode;
  bool ok = true;
  if (kind == BackendKind::Chat) {
    ok = mode == PromptMode::ZeroShot || mode == PromptMode::FewShot;
  } else if (kind == BackendKind::Edit) {
    ok = mode == PromptMode::Instruct;
  }
  if (!ok) {
    throw IncompatiblePromptMode(std::string(prompts::to_string(mode)) +
                                 " prompt sent to backend " + backend_name);
  }
}

// Counting semaphore bounding in-flight requests per backend.
class ConcurrencyGate {
 public:
  explicit ConcurrencyGate(int limit) : available_(limit < 1 ? 1 : limit) {}

  void acquire() {
    std::unique_lock lock(mutex_);
    cv_.wait(lock, [&] { return available_ > 0; });
    --available_;
  }
  void release() {
    {
      std::lock_guard lock(mutex_);
      ++available_;
    }
    cv_.notify_one();
  }

 private:
  std::mutex mutex_;
  std::condition_variable cv_;
  int available_;
};

struct GateGuard {
  explicit GateGuard(ConcurrencyGate& gate) : gate_(gate) { gate_.acquire(); }
  ~GateGuard() { gate_.release(); }
  ConcurrencyGate& gate_;
};

class RemoteBackend : public Backend {
 public:
  RemoteBackend(BackendKind kind, RemoteConfig config)
      : kind_(kind), config_(std::move(config)), gate_(config_.max_concurrency) {
    if (config_.api_path.empty()) {
      config_.api_path = kind_ == BackendKind::Chat ? "/v1/chat/completions"
                                                    : "/v1/edits";
    }
  }

  const std::string& name() const override { return config_.name; }
  BackendKind kind() const override { return kind_; }

  std::vector<Prediction> generate(const std::string& sample_id,
                                   const prompts::Prompt& prompt,
                                   const GenerationParams& params) override {
    ensure_mode(kind_, prompt.mode, config_.name);
    const char* key = std::getenv(std::string(kApiKeyEnvVar).c_str());
    if (key == nullptr || *key == '\0') {
      throw AuthMissing("set " + std::string(kApiKeyEnvVar) +
                        " to call backend " + config_.name);
    }

    json body = kind_ == BackendKind::Chat ? chat_body(prompt, params)
                                           : edit_body(prompt, params);

    GateGuard guard(gate_);
    auto started = std::chrono::steady_clock::now();
    json response = post_with_retries(body.dump(), key);
    double latency_ms =
        std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - started)
            .count();

    return parse_choices(response, sample_id, latency_ms);
  }

 private:
  json chat_body(const prompts::Prompt& prompt,
                 const GenerationParams& params) const {
    json body;
    body["model"] = config_.model;
    json messages = json::array();
    if (!prompt.system_text.empty()) {
      messages.push_back({{"role", "system"}, {"content", prompt.system_text}});
    }
    messages.push_back({{"role", "user"}, {"content", prompt.body}});
    body["messages"] = std::move(messages);
    body["temperature"] = params.temperature;
    body["top_p"] = params.top_p;
    body["frequency_penalty"] = params.frequency_penalty;
    body["presence_penalty"] = params.presence_penalty;
    body["n"] = params.n_candidates;
    return body;
  }

  json edit_body(const prompts::Prompt& prompt,
                 const GenerationParams& params) const {
    json body;
    body["model"] = config_.model;
    body["input"] = prompt.code;
    body["instruction"] = prompt.instruction;
    body["temperature"] = params.temperature;
    body["top_p"] = params.top_p;
    return body;
  }

  json post_with_retries(const std::string& payload, const char* key) const {
    httplib::Client client(config_.base_url);
    client.set_connection_timeout(30);
    client.set_read_timeout(120);
    httplib::Headers headers = {
        {"Authorization", std::string("Bearer ") + key}};

    int delay_ms = config_.backoff_initial_ms;
    std::string last_error = "no attempt made";
    for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
      if (attempt > 0) {
        std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms));
        delay_ms *= 2;
      }
      auto result = client.Post(config_.api_path, headers, payload,
                                "application/json");
      if (!result) {
        last_error = "transport error: " + httplib::to_string(result.error());
        continue;
      }
      if (result->status == 429 || result->status >= 500) {
        last_error = "HTTP " + std::to_string(result->status);
        continue;
      }
      if (result->status != 200) {
        throw BackendExhausted("backend " + config_.name +
                               " rejected the request: HTTP " +
                               std::to_string(result->status) + " " +
                               result->body);
      }
      json parsed = json::parse(result->body, nullptr,
                                /*allow_exceptions=*/false);
      if (parsed.is_discarded()) {
        last_error = "unparsable response body";
        continue;
      }
      return parsed;
    }
    throw BackendExhausted("backend " + config_.name + " failed after " +
                           std::to_string(config_.max_retries + 1) +
                           " attempts; last error: " + last_error);
  }

  std::vector<Prediction> parse_choices(const json& response,
                                        const std::string& sample_id,
                                        double latency_ms) const {
    std::vector<Prediction> predictions;
    if (!response.contains("choices") || !response["choices"].is_array()) {
      throw BackendExhausted("backend " + config_.name +
                             " response has no choices array");
    }
    int rank = 1;
    for (const auto& choice : response["choices"]) {
      Prediction p;
      p.sample_id = sample_id;
      p.rank = rank++;
      p.backend_name = config_.name;
      p.latency_ms = latency_ms;
      if (kind_ == BackendKind::Chat) {
        p.raw_text = choice.at("message").at("content").get<std::string>();
      } else {
        p.raw_text = choice.at("text").get<std::string>();
      }
      predictions.push_back(std::move(p));
    }
    return predictions;
  }

  BackendKind kind_;
  RemoteConfig config_;
  mutable ConcurrencyGate gate_;
};

class MockBackend : public Backend {
 public:
  MockBackend(std::string name, std::map<std::string, std::string> responses)
      : name_(std::move(name)), responses_(std::move(responses)) {}

  const std::string& name() const override { return name_; }
  BackendKind kind() const override { return BackendKind::Mock; }

  std::vector<Prediction> generate(const std::string& sample_id,
                                   const prompts::Prompt& /*prompt*/,
                                   const GenerationParams& params) override {
    auto it = responses_.find(sample_id);
    if (it == responses_.end()) {
      throw BackendExhausted("mock backend " + name_ +
                             " has no response for sample " + sample_id);
    }
    std::vector<Prediction> predictions;
    for (int rank = 1; rank <= params.n_candidates; ++rank) {
      Prediction p;
      p.sample_id = sample_id;
      p.rank = rank;
      p.raw_text = it->second;
      p.backend_name = name_;
      predictions.push_back(std::move(p));
    }
    return predictions;
  }

 private:
  std::string name_;
  std::map<std::string, std::string> responses_;
};

}  // namespace

std::unique_ptr<Backend> make_chat_backend(RemoteConfig config) {
  return std::make_unique<RemoteBackend>(BackendKind::Chat, std::move(config));
}

std::unique_ptr<Backend> make_edit_backend(RemoteConfig config) {
  return std::make_unique<RemoteBackend>(BackendKind::Edit, std::move(config));
}

std::unique_ptr<Backend> make_oracle_backend(
    std::string name, std::map<std::string, std::string> targets_by_id) {
  return std::make_unique<MockBackend>(std::move(name),
                                       std::move(targets_by_id));
}

std::unique_ptr<Backend> make_echo_backend(
    std::string name, std::map<std::string, std::string> focus_by_id) {
  return std::make_unique<MockBackend>(std::move(name), std::move(focus_by_id));
}

void BackendRegistry::add(std::unique_ptr<Backend> backend) {
  std::string key = backend->name();
  backends_[key] = std::move(backend);
}

Backend& BackendRegistry::get(const std::string& name) const {
  auto it = backends_.find(name);
  if (it == backends_.end()) {
    throw Error("backend not registered: " + name);
  }
  return *it->second;
}

bool BackendRegistry::contains(const std::string& name) const {
  return backends_.count(name) > 0;
}

std::vector<std::string> BackendRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : backends_) out.push_back(name);
  return out;
}

}  // namespace repairbench::backends
