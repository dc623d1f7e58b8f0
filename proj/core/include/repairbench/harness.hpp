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

#ifndef REPAIRBENCH_HARNESS_HPP_
#define REPAIRBENCH_HARNESS_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "repairbench/backends.hpp"
#include "repairbench/metrics.hpp"
#include "repairbench/prompts.hpp"

namespace repairbench::harness {

struct BackendSpec {
  std::string name;
  std::string kind;  // "chat", "edit", "oracle", "echo"
  std::string model;
  std::string base_url;
  std::string api_path;
  int max_retries = 3;
  int backoff_initial_ms = 250;
  int max_concurrency = 4;
};

struct RunConfig {
  std::filesystem::path corpus_path;
  std::filesystem::path run_dir = "run";
  std::vector<BackendSpec> backends;
  prompts::PromptMode mode = prompts::PromptMode::ZeroShot;
  std::vector<int> ks = {1, 5, 10};
  metrics::CodeBleuWeights weights;
  backends::GenerationParams params;
  std::uint64_t seed = 0;
  int concurrency = 4;   // worker threads per backend pass
  int shots = 3;         // few-shot examples per prompt
};

// Reads either line-based key=value (backend.<name>.<field> spelling for
// per-backend settings) or a JSON object; see the README for the key list.
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(std::string_view text);

// FNV-1a over the canonical config dump; every artifact of a run carries it.
std::string fingerprint(const RunConfig& config);

// Builds the registry a config describes. Mock kinds (oracle, echo) take
// their answers from the sample store.
backends::BackendRegistry build_registry(
    const RunConfig& config, const std::vector<corpus::RepairSample>& samples);

struct FailureRecord {
  std::string backend;
  std::string sample_id;
  std::string error;
};

struct RunSummary {
  std::filesystem::path run_dir;
  std::string fingerprint;
  std::size_t n_samples = 0;
  std::size_t n_test = 0;
  std::size_t n_predicted = 0;   // newly generated this invocation
  std::size_t n_resumed = 0;     // found in the raw store and skipped
  std::size_t n_failed = 0;
  std::vector<FailureRecord> failures;
};

// Full pipeline over the test split: prompt -> generate -> clean -> score.
// Raw responses are append-only; a rerun over the same run_dir with the same
// fingerprint skips already-predicted samples and rescores. A fingerprint
// mismatch against an existing manifest is fatal.
RunSummary run(const RunConfig& config);

// Renders the comparison table (rows = backends, columns = top-k / BLEU-4 /
// CodeBLEU) plus per-category tables from a finished run directory. Throws
// NoRuns when the directory holds no scores.
std::string report(const std::filesystem::path& run_dir);

}  // namespace repairbench::harness

#endif  // REPAIRBENCH_HARNESS_HPP_
