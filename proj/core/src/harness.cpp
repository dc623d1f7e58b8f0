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

#include "repairbench/harness.hpp"

#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "repairbench/cleaner.hpp"
#include "repairbench/errors.hpp"
#include "repairbench/retrieval.hpp"
#include "repairbench/version.hpp"

namespace repairbench::harness {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string trim_copy(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return std::string(s);
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::string t = trim_copy(item);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

BackendSpec& spec_for(RunConfig& config, const std::string& name) {
  for (auto& spec : config.backends) {
    if (spec.name == name) return spec;
  }
  config.backends.push_back(BackendSpec{.name = name});
  return config.backends.back();
}

void apply_key(RunConfig& config, const std::string& key,
               const std::string& value) {
  if (key == "corpus") {
    config.corpus_path = value;
  } else if (key == "run_dir") {
    config.run_dir = value;
  } else if (key == "mode") {
    config.mode = prompts::prompt_mode_from(value);
  } else if (key == "ks") {
    config.ks.clear();
    for (const std::string& k : split_list(value)) {
      config.ks.push_back(std::stoi(k));
    }
  } else if (key == "seed") {
    config.seed = std::stoull(value);
  } else if (key == "concurrency") {
    config.concurrency = std::stoi(value);
  } else if (key == "shots") {
    config.shots = std::stoi(value);
  } else if (key == "n_candidates") {
    config.params.n_candidates = std::stoi(value);
  } else if (key == "temperature") {
    config.params.temperature = std::stod(value);
  } else if (key == "top_p") {
    config.params.top_p = std::stod(value);
  } else if (key == "frequency_penalty") {
    config.params.frequency_penalty = std::stod(value);
  } else if (key == "presence_penalty") {
    config.params.presence_penalty = std::stod(value);
  } else if (key == "weights.ngram") {
    config.weights.ngram = std::stod(value);
  } else if (key == "weights.weighted_ngram") {
    config.weights.weighted_ngram = std::stod(value);
  } else if (key == "weights.ast") {
    config.weights.ast = std::stod(value);
  } else if (key == "weights.dataflow") {
    config.weights.dataflow = std::stod(value);
  } else if (key == "weights.keyword") {
    config.weights.keyword_weight = std::stod(value);
  } else if (key == "backends") {
    for (const std::string& name : split_list(value)) spec_for(config, name);
  } else if (key.rfind("backend.", 0) == 0) {
    std::size_t dot = key.find('.', 8);
    if (dot == std::string::npos) throw Error("bad backend key: " + key);
    std::string name = key.substr(8, dot - 8);
    std::string field = key.substr(dot + 1);
    BackendSpec& spec = spec_for(config, name);
    if (field == "kind") {
      spec.kind = value;
    } else if (field == "model") {
      spec.model = value;
    } else if (field == "base_url") {
      spec.base_url = value;
    } else if (field == "api_path") {
      spec.api_path = value;
    } else if (field == "max_retries") {
      spec.max_retries = std::stoi(value);
    } else if (field == "backoff_initial_ms") {
      spec.backoff_initial_ms = std::stoi(value);
    } else if (field == "max_concurrency") {
      spec.max_concurrency = std::stoi(value);
    } else {
      throw Error("unknown backend field: " + field);
    }
  } else {
    throw Error("unknown config key: " + key);
  }
}

RunConfig parse_json_config(const std::string& text) {
  json j = json::parse(text);
  RunConfig config;
  if (j.contains("corpus")) config.corpus_path = j["corpus"].get<std::string>();
  if (j.contains("run_dir")) config.run_dir = j["run_dir"].get<std::string>();
  if (j.contains("mode")) {
    config.mode = prompts::prompt_mode_from(j["mode"].get<std::string>());
  }
  if (j.contains("ks")) config.ks = j["ks"].get<std::vector<int>>();
  if (j.contains("seed")) config.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("concurrency")) {
    config.concurrency = j["concurrency"].get<int>();
  }
  if (j.contains("shots")) config.shots = j["shots"].get<int>();
  if (j.contains("n_candidates")) {
    config.params.n_candidates = j["n_candidates"].get<int>();
  }
  if (j.contains("temperature")) {
    config.params.temperature = j["temperature"].get<double>();
  }
  if (j.contains("weights")) {
    const auto& w = j["weights"];
    config.weights.ngram = w.value("ngram", 0.25);
    config.weights.weighted_ngram = w.value("weighted_ngram", 0.25);
    config.weights.ast = w.value("ast", 0.25);
    config.weights.dataflow = w.value("dataflow", 0.25);
    config.weights.keyword_weight = w.value("keyword_weight", 5.0);
  }
  if (j.contains("backends")) {
    for (const auto& b : j["backends"]) {
      BackendSpec spec;
      spec.name = b.at("name").get<std::string>();
      spec.kind = b.value("kind", "");
      spec.model = b.value("model", "");
      spec.base_url = b.value("base_url", "");
      spec.api_path = b.value("api_path", "");
      spec.max_retries = b.value("max_retries", 3);
      spec.backoff_initial_ms = b.value("backoff_initial_ms", 250);
      spec.max_concurrency = b.value("max_concurrency", 4);
      config.backends.push_back(std::move(spec));
    }
  }
  return config;
}

std::string canonical_dump(const RunConfig& config) {
  std::ostringstream out;
  out << "corpus=" << config.corpus_path.string() << '\n'
      << "mode=" << prompts::to_string(config.mode) << '\n'
      << "seed=" << config.seed << '\n'
      << "shots=" << config.shots << '\n'
      << "n_candidates=" << config.params.n_candidates << '\n'
      << "temperature=" << config.params.temperature << '\n'
      << "top_p=" << config.params.top_p << '\n'
      << "frequency_penalty=" << config.params.frequency_penalty << '\n'
      << "presence_penalty=" << config.params.presence_penalty << '\n'
      << "weights=" << config.weights.ngram << ','
      << config.weights.weighted_ngram << ',' << config.weights.ast << ','
      << config.weights.dataflow << ',' << config.weights.keyword_weight
      << '\n'
      << "template=" << prompts::kTemplateVersion << '\n'
      << "tokenizer=" << kTokenizerVersion << '\n';
  out << "ks=";
  for (int k : config.ks) out << k << ',';
  out << '\n';
  for (const auto& spec : config.backends) {
    out << "backend=" << spec.name << ';' << spec.kind << ';' << spec.model
        << ';' << spec.base_url << ';' << spec.api_path << '\n';
  }
  return out.str();
}

std::string iso_now() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& fn) {
  if (threads < 2 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  int worker_count = std::min<int>(threads, static_cast<int>(n));
  pool.reserve(static_cast<std::size_t>(worker_count));
  for (int w = 0; w < worker_count; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

std::map<std::string, std::vector<backends::Prediction>> load_raw(
    const fs::path& path) {
  std::map<std::string, std::vector<backends::Prediction>> out;
  std::ifstream in(path);
  if (!in) return out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    backends::Prediction p = backends::prediction_from_json_line(line);
    out[p.sample_id].push_back(std::move(p));
  }
  return out;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  std::string trimmed = trim_copy(text);
  if (!trimmed.empty() && trimmed.front() == '{') {
    return parse_json_config(trimmed);
  }
  RunConfig config;
  std::stringstream ss{std::string(text)};
  std::string line;
  while (std::getline(ss, line)) {
    std::string t = trim_copy(line);
    if (t.empty() || t[0] == '#') continue;
    std::size_t eq = t.find('=');
    if (eq == std::string::npos) throw Error("config line missing '=': " + t);
    apply_key(config, trim_copy(t.substr(0, eq)), trim_copy(t.substr(eq + 1)));
  }
  return config;
}

RunConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config: " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string fingerprint(const RunConfig& config) {
  // FNV-1a, 64 bit
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char c : canonical_dump(config)) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(hash));
  return buf;
}

backends::BackendRegistry build_registry(
    const RunConfig& config, const std::vector<corpus::RepairSample>& samples) {
  backends::BackendRegistry registry;
  for (const auto& spec : config.backends) {
    if (spec.kind == "chat" || spec.kind == "edit") {
      backends::RemoteConfig remote;
      remote.name = spec.name;
      remote.model = spec.model;
      remote.base_url = spec.base_url;
      remote.api_path = spec.api_path;
      remote.max_retries = spec.max_retries;
      remote.backoff_initial_ms = spec.backoff_initial_ms;
      remote.max_concurrency = spec.max_concurrency;
      registry.add(spec.kind == "chat"
                       ? backends::make_chat_backend(std::move(remote))
                       : backends::make_edit_backend(std::move(remote)));
    } else if (spec.kind == "oracle") {
      std::map<std::string, std::string> targets;
      for (const auto& s : samples) targets[s.id] = s.target;
      registry.add(
          backends::make_oracle_backend(spec.name, std::move(targets)));
    } else if (spec.kind == "echo") {
      std::map<std::string, std::string> focus;
      for (const auto& s : samples) {
        focus[s.id] = corpus::focus_region(s).body;
      }
      registry.add(backends::make_echo_backend(spec.name, std::move(focus)));
    } else {
      throw Error("unknown backend kind '" + spec.kind + "' for " + spec.name);
    }
  }
  return registry;
}

RunSummary run(const RunConfig& config) {
  if (config.backends.empty()) throw Error("config names no backends");

  RunSummary summary;
  summary.run_dir = config.run_dir;
  summary.fingerprint = fingerprint(config);

  const fs::path run_dir = config.run_dir;
  for (const char* sub : {"samples", "prompts", "raw", "cleaned", "scores"}) {
    fs::create_directories(run_dir / sub);
  }

  const fs::path manifest_path = run_dir / "manifest.json";
  std::string started_at = iso_now();
  if (fs::exists(manifest_path)) {
    std::ifstream in(manifest_path);
    json existing = json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (existing.is_discarded() ||
        existing.value("fingerprint", "") != summary.fingerprint) {
      throw Error("run directory " + run_dir.string() +
                  " belongs to a different configuration; refusing to mix");
    }
    started_at = existing.value("started_at", started_at);
  }

  std::vector<corpus::RepairSample> samples =
      corpus::load_store(config.corpus_path);
  summary.n_samples = samples.size();
  corpus::save_store(run_dir / "samples" / "samples.jsonl", samples);

  std::vector<const corpus::RepairSample*> test;
  std::vector<const corpus::RepairSample*> train;
  for (const auto& s : samples) {
    if (s.split == corpus::Split::Test) test.push_back(&s);
    if (s.split == corpus::Split::Train) train.push_back(&s);
  }
  summary.n_test = test.size();

  // Prompts depend on the mode, not the backend. Few-shot retrieval runs
  // over train reviews only, which keeps test data out of the shots.
  std::optional<retrieval::TfidfIndex> index;
  std::map<std::string, const corpus::RepairSample*> by_id;
  for (const auto& s : samples) by_id[s.id] = &s;
  if (config.mode == prompts::PromptMode::FewShot) {
    std::vector<std::string> ids, reviews;
    for (const auto* s : train) {
      ids.push_back(s->id);
      reviews.push_back(s->review);
    }
    index = retrieval::build_index(ids, reviews);
    retrieval::save_index(run_dir / "prompts" / "tfidf_index.jsonl", *index);
  }

  std::vector<prompts::Prompt> test_prompts(test.size());
  {
    std::ofstream out(run_dir / "prompts" / "prompts.jsonl");
    for (std::size_t i = 0; i < test.size(); ++i) {
      const corpus::RepairSample& sample = *test[i];
      switch (config.mode) {
        case prompts::PromptMode::ZeroShot:
          test_prompts[i] = prompts::build_zero_shot(sample);
          break;
        case prompts::PromptMode::FewShot: {
          auto ranked = retrieval::top_k_similar(
              *index, sample.review, static_cast<std::size_t>(config.shots));
          std::vector<corpus::RepairSample> shots;
          for (const auto& scored : ranked) {
            shots.push_back(*by_id.at(scored.id));
          }
          test_prompts[i] = prompts::build_few_shot(sample, shots);
          break;
        }
        case prompts::PromptMode::Instruct:
          test_prompts[i] = prompts::build_instruct(sample);
          break;
      }
      out << prompts::to_json_line(sample.id, test_prompts[i]) << '\n';
    }
  }

  backends::BackendRegistry registry = build_registry(config, samples);

  std::vector<metrics::ScoreCardRecord> records;
  for (const auto& spec : config.backends) {
    backends::Backend& backend = registry.get(spec.name);
    const fs::path raw_path = run_dir / "raw" / (spec.name + ".jsonl");
    auto existing = load_raw(raw_path);

    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < test.size(); ++i) {
      if (existing.count(test[i]->id) == 0) {
        todo.push_back(i);
      } else {
        ++summary.n_resumed;
      }
    }

    std::vector<std::vector<backends::Prediction>> fresh(todo.size());
    std::vector<std::string> errors(todo.size());
    parallel_for(todo.size(), config.concurrency, [&](std::size_t j) {
      std::size_t i = todo[j];
      try {
        fresh[j] =
            backend.generate(test[i]->id, test_prompts[i], config.params);
      } catch (const std::exception& e) {
        errors[j] = e.what();
      }
    });

    {
      std::ofstream raw_out(raw_path, std::ios::app);
      for (std::size_t j = 0; j < todo.size(); ++j) {
        if (!errors[j].empty()) {
          summary.failures.push_back(
              FailureRecord{spec.name, test[todo[j]]->id, errors[j]});
          continue;
        }
        for (const auto& p : fresh[j]) raw_out << to_json_line(p) << '\n';
        existing[test[todo[j]]->id] = fresh[j];
        ++summary.n_predicted;
      }
    }

    // clean and score; the raw store stays as written
    std::vector<metrics::ScoredSample> scored;
    std::ofstream cleaned_out(run_dir / "cleaned" / (spec.name + ".jsonl"));
    for (const auto* sample : test) {
      metrics::ScoredSample entry;
      entry.sample_id = sample->id;
      entry.category = sample->category;
      entry.target = sample->target;
      auto it = existing.find(sample->id);
      if (it == existing.end()) {
        entry.failed = true;
        scored.push_back(std::move(entry));
        continue;
      }
      for (const auto& p : it->second) {
        cleaner::CleanResult cleaned = cleaner::clean(p.raw_text);
        backends::Prediction annotated = p;
        annotated.cleaned_text = cleaned.cleaned_text;
        cleaned_out << to_json_line(annotated) << '\n';
        entry.predictions.push_back(std::move(cleaned.cleaned_text));
      }
      scored.push_back(std::move(entry));
    }

    auto card = metrics::score(scored, config.ks, config.weights);
    auto by_category =
        metrics::per_category_report(scored, config.ks, config.weights);

    auto make_record = [&](const std::string& category,
                           const metrics::ScoreCard& c) {
      metrics::ScoreCardRecord record;
      record.backend = spec.name;
      record.split = "test";
      record.category = category;
      record.card = c;
      record.fingerprint = summary.fingerprint;
      record.weights = config.weights;
      record.template_version = std::string(prompts::kTemplateVersion);
      record.tokenizer_version = std::string(kTokenizerVersion);
      return record;
    };
    records.push_back(make_record("overall", card));
    for (const auto& [category, c] : by_category) {
      records.push_back(
          make_record(std::string(corpus::to_string(category)), c));
    }
  }
  summary.n_failed = summary.failures.size();

  {
    std::ofstream scores_out(run_dir / "scores" / "scores.jsonl");
    for (const auto& record : records) {
      scores_out << metrics::to_json_line(record) << '\n';
    }
  }
  {
    std::ofstream failed_out(run_dir / "failed.jsonl");
    for (const auto& failure : summary.failures) {
      json j;
      j["backend"] = failure.backend;
      j["sample_id"] = failure.sample_id;
      j["error"] = failure.error;
      failed_out << j.dump() << '\n';
    }
  }
  {
    json manifest;
    manifest["fingerprint"] = summary.fingerprint;
    manifest["tool_version"] = std::string(kToolVersion);
    manifest["tokenizer_version"] = std::string(kTokenizerVersion);
    manifest["template_version"] = std::string(prompts::kTemplateVersion);
    manifest["started_at"] = started_at;
    manifest["finished_at"] = iso_now();
    manifest["counts"] = {{"samples", summary.n_samples},
                          {"test", summary.n_test},
                          {"predicted", summary.n_predicted},
                          {"resumed", summary.n_resumed},
                          {"failed", summary.n_failed}};
    std::ofstream manifest_out(manifest_path);
    manifest_out << manifest.dump(2) << '\n';
  }
  return summary;
}

std::string report(const fs::path& run_dir) {
  const fs::path scores_path = run_dir / "scores" / "scores.jsonl";
  std::ifstream in(scores_path);
  if (!in) throw NoRuns("no scores found under " + run_dir.string());

  std::vector<metrics::ScoreCardRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) {
      records.push_back(metrics::scorecard_from_json_line(line));
    }
  }
  if (records.empty()) {
    throw NoRuns("scores file is empty: " + scores_path.string());
  }

  std::vector<std::string> categories{"overall", "insert", "delete", "update",
                                      "unclassified"};
  std::map<std::string, std::map<std::string, metrics::ScoreCardRecord>>
      grouped;
  for (const auto& record : records) {
    grouped[record.category][record.backend] = record;
  }

  std::vector<int> ks;
  for (const auto& [k, _] : records.front().card.top_k_accuracy) {
    ks.push_back(k);
  }

  std::ostringstream out;
  out << "Run " << records.front().fingerprint << " (template "
      << records.front().template_version << ", tokenizer "
      << records.front().tokenizer_version << ")\n";

  for (const std::string& category : categories) {
    auto group = grouped.find(category);
    if (group == grouped.end()) continue;
    out << '\n' << "=== " << category << " (split=test) ===\n";
    out << "backend                 ";
    for (int k : ks) {
      char col[16];
      std::snprintf(col, sizeof(col), "Top-%-4d", k);
      out << col;
    }
    out << "  BLEU-4  CodeBLEU  scored  failed\n";
    for (const auto& [backend, record] : group->second) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%-22s", backend.c_str());
      out << buf << "  ";
      if (record.card.empty()) {
        out << "(no samples)\n";
        continue;
      }
      for (int k : ks) {
        std::snprintf(buf, sizeof(buf), "%7.2f ",
                      record.card.top_k_accuracy.count(k)
                          ? record.card.top_k_accuracy.at(k)
                          : 0.0);
        out << buf;
      }
      std::snprintf(buf, sizeof(buf), " %7.2f  %8.2f  %6zu  %6zu\n",
                    record.card.bleu4, record.card.codebleu,
                    record.card.n_scored, record.card.n_failed);
      out << buf;
    }
  }
  return out.str();
}

}  // namespace repairbench::harness
