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

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "repairbench/analysis.hpp"
#include "repairbench/backends.hpp"
#include "repairbench/cleaner.hpp"
#include "repairbench/corpus.hpp"
#include "repairbench/errors.hpp"
#include "repairbench/harness.hpp"
#include "repairbench/metrics.hpp"
#include "repairbench/prompts.hpp"
#include "repairbench/retrieval.hpp"
#include "repairbench/version.hpp"

namespace {

using namespace repairbench;
using nlohmann::json;
namespace fs = std::filesystem;

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<int> parse_ks(const std::string& csv) {
  std::vector<int> ks;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) ks.push_back(std::stoi(item));
  }
  return ks;
}

// --- ingest ---------------------------------------------------------------

struct IngestOptions {
  std::string records;
  std::string source;
  std::string target;
  std::string dataset = "tufano";
  std::string split_label = "unassigned";
  std::string token_counts;
  std::string output;
  std::size_t max_tokens = 0;  // 0 = no cap
  bool append = false;
  bool skip_bad = false;
};

int run_ingest(const IngestOptions& opt) {
  corpus::DatasetKind default_kind = corpus::dataset_kind_from(opt.dataset);
  corpus::Split label = corpus::split_from(opt.split_label);

  std::vector<corpus::RepairSample> samples;
  std::size_t bad = 0;
  auto note_bad = [&](std::size_t line_no, const std::exception& e) {
    ++bad;
    std::cerr << "record " << line_no << ": " << e.what() << "\n";
    if (!opt.skip_bad) throw Error("ingest aborted; use --skip-bad to continue");
  };

  if (!opt.records.empty()) {
    auto lines = read_lines(opt.records);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (lines[i].empty()) continue;
      try {
        json j = json::parse(lines[i]);
        corpus::RawRecord raw;
        raw.id = j.value("id", opt.dataset + "-" + std::to_string(i));
        raw.code = j.at("code").get<std::string>();
        if (j.contains("review")) raw.review = j["review"].get<std::string>();
        raw.target = j.value("target", "");
        corpus::DatasetKind kind =
            j.contains("dataset_kind")
                ? corpus::dataset_kind_from(j["dataset_kind"].get<std::string>())
                : default_kind;
        auto sample = corpus::parse_record(raw, kind);
        sample.split = label;
        samples.push_back(std::move(sample));
      } catch (const std::exception& e) {
        note_bad(i + 1, e);
      }
    }
  } else {
    auto sources = read_lines(opt.source);
    auto targets = read_lines(opt.target);
    if (sources.size() != targets.size()) {
      throw Error("source/target line counts differ: " +
                  std::to_string(sources.size()) + " vs " +
                  std::to_string(targets.size()));
    }
    for (std::size_t i = 0; i < sources.size(); ++i) {
      if (sources[i].empty()) continue;
      try {
        auto sample = corpus::parse_source_target(
            sources[i], targets[i], default_kind,
            opt.dataset + "-" + std::to_string(i));
        sample.split = label;
        samples.push_back(std::move(sample));
      } catch (const std::exception& e) {
        note_bad(i + 1, e);
      }
    }
  }

  std::size_t removed = 0;
  if (opt.max_tokens > 0) {
    corpus::FilterResult filtered;
    if (!opt.token_counts.empty()) {
      // external counts, e.g. from the original model's subword tokenizer
      std::map<std::string, std::size_t> counts;
      for (const auto& line : read_lines(opt.token_counts)) {
        if (line.empty()) continue;
        json j = json::parse(line);
        counts[j.at("id").get<std::string>()] =
            j.at("count").get<std::size_t>();
      }
      filtered = corpus::filter_by_token_length(
          std::move(samples), opt.max_tokens,
          [&](const corpus::RepairSample& s) {
            auto it = counts.find(s.id);
            if (it == counts.end()) {
              throw Error("no token count supplied for sample " + s.id);
            }
            return it->second;
          });
    } else {
      filtered =
          corpus::filter_by_token_length(std::move(samples), opt.max_tokens);
    }
    removed = filtered.removed.size();
    samples = std::move(filtered.kept);
  }

  std::ofstream out(opt.output,
                    opt.append ? std::ios::app : std::ios::trunc);
  if (!out) throw Error("cannot write " + opt.output);
  for (const auto& sample : samples) {
    out << corpus::to_json_line(sample) << '\n';
  }

  std::cout << "ingested=" << samples.size() << " removed=" << removed
            << " bad=" << bad;
  if (opt.max_tokens > 0) {
    std::cout << " cap=" << opt.max_tokens
              << (opt.token_counts.empty() ? " counter=javatok (tokenizer-dependent)"
                                           : " counter=external");
  }
  std::cout << "\n";
  return bad > 0 && !opt.skip_bad ? 1 : 0;
}

// --- split ------------------------------------------------------------------

int run_split(const std::string& samples_path, const std::string& output,
              int train, int valid, int test, std::uint64_t seed,
              const std::string& pool) {
  auto all = corpus::load_store(samples_path);

  std::vector<corpus::RepairSample> in_pool, out_of_pool;
  for (auto& s : all) {
    bool eligible = pool == "all" ||
                    (pool == "train" && s.split == corpus::Split::Train) ||
                    (pool == "train+test" &&
                     (s.split == corpus::Split::Train ||
                      s.split == corpus::Split::Test));
    (eligible ? in_pool : out_of_pool).push_back(std::move(s));
  }
  if (in_pool.empty()) throw Error("split pool '" + pool + "' matched nothing");

  auto spec = corpus::SplitSpec::percent(train, valid, test, seed);
  auto result = corpus::split_dataset(std::move(in_pool), spec);

  std::vector<corpus::RepairSample> merged;
  for (auto& s : result.train) merged.push_back(std::move(s));
  for (auto& s : result.validation) merged.push_back(std::move(s));
  for (auto& s : result.test) merged.push_back(std::move(s));
  for (auto& s : out_of_pool) merged.push_back(std::move(s));
  corpus::save_store(output, merged);

  std::cout << "train=" << result.train.size()
            << " validation=" << result.validation.size()
            << " test=" << result.test.size()
            << " untouched=" << out_of_pool.size() << "\n";
  return 0;
}

// --- classify ---------------------------------------------------------------

int run_classify(const std::string& samples_path, const std::string& output) {
  auto samples = corpus::load_store(samples_path);
  std::map<std::string, std::size_t> counts;
  std::size_t degenerate = 0;
  for (auto& sample : samples) {
    auto c = corpus::classify_fix(sample);
    sample.category = c.category;
    if (c.degenerate) ++degenerate;
    counts[std::string(corpus::to_string(c.category))]++;
  }
  corpus::save_store(output, samples);
  for (const auto& [category, count] : counts) {
    std::cout << category << "=" << count << " ";
  }
  std::cout << "degenerate=" << degenerate << "\n";
  return 0;
}

// --- index / prompt ----------------------------------------------------------

int run_index(const std::string& samples_path, const std::string& output) {
  auto samples = corpus::load_store(samples_path);
  std::vector<std::string> ids, reviews;
  for (const auto& s : samples) {
    if (s.split == corpus::Split::Train) {
      ids.push_back(s.id);
      reviews.push_back(s.review);
    }
  }
  auto index = retrieval::build_index(ids, reviews);
  retrieval::save_index(output, index);
  std::cout << "docs=" << index.doc_ids.size()
            << " vocabulary=" << index.vocabulary.size() << "\n";
  return 0;
}

int run_prompt(const std::string& samples_path, const std::string& mode_name,
               const std::string& index_path, int shots,
               const std::string& output) {
  auto samples = corpus::load_store(samples_path);
  auto mode = prompts::prompt_mode_from(mode_name);

  std::optional<retrieval::TfidfIndex> index;
  std::map<std::string, const corpus::RepairSample*> by_id;
  for (const auto& s : samples) by_id[s.id] = &s;
  if (mode == prompts::PromptMode::FewShot) {
    if (index_path.empty()) throw Error("few-shot prompts need --index");
    index = retrieval::load_index(index_path);
  }

  std::ofstream out(output);
  if (!out) throw Error("cannot write " + output);
  std::size_t count = 0;
  for (const auto& sample : samples) {
    if (sample.split != corpus::Split::Test) continue;
    prompts::Prompt prompt;
    switch (mode) {
      case prompts::PromptMode::ZeroShot:
        prompt = prompts::build_zero_shot(sample);
        break;
      case prompts::PromptMode::FewShot: {
        auto ranked = retrieval::top_k_similar(*index, sample.review,
                                               static_cast<std::size_t>(shots));
        std::vector<corpus::RepairSample> shot_samples;
        for (const auto& scored : ranked) {
          shot_samples.push_back(*by_id.at(scored.id));
        }
        prompt = prompts::build_few_shot(sample, shot_samples);
        break;
      }
      case prompts::PromptMode::Instruct:
        prompt = prompts::build_instruct(sample);
        break;
    }
    out << prompts::to_json_line(sample.id, prompt) << '\n';
    ++count;
  }
  std::cout << "prompts=" << count << "\n";
  return 0;
}

// --- predict / clean ----------------------------------------------------------

int run_predict(const std::string& prompts_path, const std::string& samples_path,
                const std::string& backend_name, const std::string& config_path,
                int n_candidates, const std::string& output) {
  auto samples = corpus::load_store(samples_path);
  harness::RunConfig config;
  if (!config_path.empty()) config = harness::load_config(config_path);
  if (config.backends.empty()) {
    // offline default: the mock kinds work without any config file
    harness::BackendSpec spec;
    spec.name = backend_name;
    spec.kind = backend_name;
    config.backends.push_back(spec);
  }
  auto registry = harness::build_registry(config, samples);
  backends::Backend& backend = registry.get(backend_name);

  backends::GenerationParams params = config.params;
  if (n_candidates > 0) params.n_candidates = n_candidates;

  std::set<std::string> done;
  {
    std::ifstream existing(output);
    std::string line;
    while (std::getline(existing, line)) {
      if (line.empty()) continue;
      done.insert(backends::prediction_from_json_line(line).sample_id);
    }
  }

  std::ofstream out(output, std::ios::app);
  if (!out) throw Error("cannot write " + output);
  std::size_t generated = 0, failed = 0, skipped = 0;
  for (const auto& line : read_lines(prompts_path)) {
    if (line.empty()) continue;
    auto [sample_id, prompt] = prompts::from_json_line(line);
    if (done.count(sample_id)) {
      ++skipped;
      continue;
    }
    try {
      for (const auto& p : backend.generate(sample_id, prompt, params)) {
        out << backends::to_json_line(p) << '\n';
      }
      ++generated;
    } catch (const std::exception& e) {
      ++failed;
      std::cerr << sample_id << ": " << e.what() << "\n";
    }
  }
  std::cout << "generated=" << generated << " skipped=" << skipped
            << " failed=" << failed << "\n";
  return failed > 0 ? 2 : 0;
}

int run_clean(const std::string& raw_path, const std::string& output,
              const std::string& trace_path) {
  std::ofstream out(output);
  if (!out) throw Error("cannot write " + output);
  std::ofstream trace_out;
  if (!trace_path.empty()) trace_out.open(trace_path);

  std::size_t count = 0;
  for (const auto& line : read_lines(raw_path)) {
    if (line.empty()) continue;
    auto prediction = backends::prediction_from_json_line(line);
    auto result = cleaner::clean(prediction.raw_text);
    prediction.cleaned_text = result.cleaned_text;
    out << backends::to_json_line(prediction) << '\n';
    if (trace_out.is_open()) {
      json j;
      j["sample_id"] = prediction.sample_id;
      j["rank"] = prediction.rank;
      json applied = json::array();
      for (const auto& entry : result.trace.applied) {
        applied.push_back({{"heuristic", entry.heuristic},
                           {"before_len", entry.before_len},
                           {"after_len", entry.after_len}});
      }
      j["applied"] = std::move(applied);
      trace_out << j.dump() << '\n';
    }
    ++count;
  }
  std::cout << "cleaned=" << count << "\n";
  return 0;
}

// --- eval ---------------------------------------------------------------------

int run_eval(const std::string& cleaned_path, const std::string& samples_path,
             const std::string& ks_csv, const std::string& backend_name,
             const std::string& output) {
  auto samples = corpus::load_store(samples_path);
  auto ks = parse_ks(ks_csv);

  std::map<std::string, std::vector<backends::Prediction>> by_sample;
  for (const auto& line : read_lines(cleaned_path)) {
    if (line.empty()) continue;
    auto p = backends::prediction_from_json_line(line);
    by_sample[p.sample_id].push_back(std::move(p));
  }

  std::vector<metrics::ScoredSample> scored;
  std::string backend = backend_name;
  for (const auto& sample : samples) {
    if (sample.split != corpus::Split::Test) continue;
    metrics::ScoredSample entry;
    entry.sample_id = sample.id;
    entry.category = sample.category;
    entry.target = sample.target;
    auto it = by_sample.find(sample.id);
    if (it == by_sample.end()) {
      entry.failed = true;
    } else {
      std::sort(it->second.begin(), it->second.end(),
                [](const auto& a, const auto& b) { return a.rank < b.rank; });
      for (const auto& p : it->second) {
        entry.predictions.push_back(p.cleaned_text);
        if (backend.empty()) backend = p.backend_name;
      }
    }
    scored.push_back(std::move(entry));
  }

  metrics::CodeBleuWeights weights;
  auto overall = metrics::score(scored, ks, weights);
  auto by_category = metrics::per_category_report(scored, ks, weights);

  std::ofstream out(output);
  if (!out) throw Error("cannot write " + output);
  auto write_record = [&](const std::string& category,
                          const metrics::ScoreCard& card) {
    metrics::ScoreCardRecord record;
    record.backend = backend.empty() ? "unknown" : backend;
    record.split = "test";
    record.category = category;
    record.card = card;
    record.weights = weights;
    record.template_version = std::string(prompts::kTemplateVersion);
    record.tokenizer_version = std::string(kTokenizerVersion);
    out << metrics::to_json_line(record) << '\n';
  };
  write_record("overall", overall);
  for (const auto& [category, card] : by_category) {
    write_record(std::string(corpus::to_string(category)), card);
  }

  std::cout << "scored=" << overall.n_scored << " failed=" << overall.n_failed;
  for (int k : ks) {
    std::cout << " top" << k << "=" << overall.top_k_accuracy.at(k);
  }
  std::cout << " bleu4=" << overall.bleu4 << " codebleu=" << overall.codebleu
            << "\n";
  return 0;
}

// --- sample / annotate / kappa ---------------------------------------------------

int run_sample(const std::string& samples_path, std::int64_t population,
               double confidence, double margin, std::uint64_t seed,
               std::int64_t n_override, const std::string& split,
               const std::string& output) {
  std::vector<std::string> ids;
  if (!samples_path.empty()) {
    auto want = corpus::split_from(split);
    for (const auto& s : corpus::load_store(samples_path)) {
      if (s.split == want) ids.push_back(s.id);
    }
    population = static_cast<std::int64_t>(ids.size());
  }
  if (population < 1) throw Error("empty population");

  std::int64_t n = n_override > 0 ? n_override
                                  : analysis::sample_size(population,
                                                          confidence, margin);
  std::cout << "population=" << population << " sample_size=" << n << "\n";

  if (!ids.empty() && !output.empty()) {
    auto drawn =
        analysis::draw_sample(ids, static_cast<std::size_t>(n), seed);
    std::ofstream out(output);
    if (!out) throw Error("cannot write " + output);
    for (const auto& id : drawn) out << id << '\n';
    std::cout << "drawn=" << drawn.size() << " -> " << output << "\n";
  }
  return 0;
}

std::string now_timestamp() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

int run_annotate(const std::string& samples_path, const std::string& cleaned_path,
                 const std::string& ids_path, const std::string& rater,
                 const std::string& backend, const std::string& output,
                 bool resume) {
  auto samples = corpus::load_store(samples_path);
  std::map<std::string, const corpus::RepairSample*> by_id;
  for (const auto& s : samples) by_id[s.id] = &s;

  std::map<std::string, std::string> top1;
  for (const auto& line : read_lines(cleaned_path)) {
    if (line.empty()) continue;
    auto p = backends::prediction_from_json_line(line);
    if (p.rank == 1) top1[p.sample_id] = p.cleaned_text;
  }

  std::set<std::string> wanted;
  for (const auto& line : read_lines(ids_path)) {
    if (!line.empty()) wanted.insert(line);
  }

  std::set<std::string> already;
  if (resume) {
    std::ifstream in(output);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto record = analysis::annotation_from_json_line(line);
      if (record.rater_id == rater && record.backend_name == backend) {
        already.insert(record.sample_id);
      }
    }
  }

  std::ofstream out(output, std::ios::app);
  if (!out) throw Error("cannot write " + output);

  std::size_t rated = 0, skipped = 0;
  for (const auto& id : wanted) {
    if (already.count(id)) {
      ++skipped;
      continue;
    }
    auto sample_it = by_id.find(id);
    auto pred_it = top1.find(id);
    if (sample_it == by_id.end() || pred_it == top1.end()) {
      std::cerr << "no material for sample " << id << ", skipping\n";
      continue;
    }
    const auto& sample = *sample_it->second;
    std::cout << "\n----- sample " << id << " -----\n"
              << "buggy:     " << sample.buggy_code << "\n"
              << "review:    " << sample.review << "\n"
              << "candidate: " << pred_it->second << "\n"
              << "fulfills the review? [1=yes 0=no s=skip q=quit] " << std::flush;
    std::string answer;
    if (!std::getline(std::cin, answer)) break;
    if (answer == "q") break;
    if (answer != "0" && answer != "1") {
      ++skipped;
      continue;
    }
    analysis::AnnotationRecord record{id, rater, backend,
                                      answer == "1" ? 1 : 0, now_timestamp()};
    out << analysis::to_json_line(record) << '\n';
    ++rated;
  }
  std::cout << "\nrated=" << rated << " skipped=" << skipped << "\n";
  return 0;
}

int run_kappa(const std::string& annotations_path) {
  std::vector<analysis::AnnotationRecord> records;
  for (const auto& line : read_lines(annotations_path)) {
    if (!line.empty()) {
      records.push_back(analysis::annotation_from_json_line(line));
    }
  }
  auto table = analysis::agreement_table(records);
  std::cout << analysis::render_agreement_table(table);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"review-driven program repair harness"};
  app.set_version_flag("--version", std::string(repairbench::kToolVersion));
  app.require_subcommand(1);

  // ingest
  IngestOptions ingest;
  auto* cmd_ingest = app.add_subcommand("ingest", "parse raw corpus files");
  cmd_ingest->add_option("--records", ingest.records,
                         "structured records (JSONL)");
  cmd_ingest->add_option("--source", ingest.source, "source lines file");
  cmd_ingest->add_option("--target", ingest.target, "target lines file");
  cmd_ingest->add_option("--dataset", ingest.dataset, "tufano|r4r");
  cmd_ingest->add_option("--split-label", ingest.split_label,
                         "initial split label");
  cmd_ingest->add_option("--max-tokens", ingest.max_tokens,
                         "drop samples above this count (0 = keep all)");
  cmd_ingest->add_option("--token-counts", ingest.token_counts,
                         "JSONL {id,count} external counter");
  cmd_ingest->add_option("--output", ingest.output)->required();
  cmd_ingest->add_flag("--append", ingest.append);
  cmd_ingest->add_flag("--skip-bad", ingest.skip_bad);

  // split
  std::string samples_path, output, pool = "all";
  int train_pct = 90, valid_pct = 5, test_pct = 5;
  std::uint64_t seed = 0;
  auto* cmd_split = app.add_subcommand("split", "reorganize split labels");
  cmd_split->add_option("--samples", samples_path)->required();
  cmd_split->add_option("--output", output)->required();
  cmd_split->add_option("--train", train_pct);
  cmd_split->add_option("--valid", valid_pct);
  cmd_split->add_option("--test", test_pct);
  cmd_split->add_option("--seed", seed);
  cmd_split->add_option("--pool", pool,
                        "which samples to re-split: all|train|train+test");

  // classify
  std::string cls_samples, cls_output;
  auto* cmd_classify = app.add_subcommand("classify", "label fix categories");
  cmd_classify->add_option("--samples", cls_samples)->required();
  cmd_classify->add_option("--output", cls_output)->required();

  // index
  std::string idx_samples, idx_output;
  auto* cmd_index = app.add_subcommand("index", "build the review TF-IDF index");
  cmd_index->add_option("--samples", idx_samples)->required();
  cmd_index->add_option("--output", idx_output)->required();

  // prompt
  std::string pr_samples, pr_mode = "zero-shot", pr_index, pr_output;
  int pr_shots = 3;
  auto* cmd_prompt = app.add_subcommand("prompt", "render prompts for the test split");
  cmd_prompt->add_option("--samples", pr_samples)->required();
  cmd_prompt->add_option("--mode", pr_mode, "zero-shot|few-shot|instruct");
  cmd_prompt->add_option("--index", pr_index, "TF-IDF index for few-shot");
  cmd_prompt->add_option("--shots", pr_shots);
  cmd_prompt->add_option("--output", pr_output)->required();

  // predict
  std::string pd_prompts, pd_samples, pd_backend, pd_config, pd_output;
  int pd_n = 0;
  auto* cmd_predict = app.add_subcommand("predict", "query a repair backend");
  cmd_predict->add_option("--prompts", pd_prompts)->required();
  cmd_predict->add_option("--samples", pd_samples)->required();
  cmd_predict->add_option("--backend", pd_backend)->required();
  cmd_predict->add_option("--config", pd_config, "backend configuration file");
  cmd_predict->add_option("--n", pd_n, "candidates per sample");
  cmd_predict->add_option("--output", pd_output)->required();

  // clean
  std::string cl_raw, cl_output, cl_trace;
  auto* cmd_clean = app.add_subcommand("clean", "apply the response heuristics");
  cmd_clean->add_option("--raw", cl_raw)->required();
  cmd_clean->add_option("--output", cl_output)->required();
  cmd_clean->add_option("--trace", cl_trace, "write per-prediction traces");

  // eval
  std::string ev_cleaned, ev_samples, ev_ks = "1,5,10", ev_backend, ev_output;
  auto* cmd_eval = app.add_subcommand("eval", "score cleaned predictions");
  cmd_eval->add_option("--cleaned", ev_cleaned)->required();
  cmd_eval->add_option("--samples", ev_samples)->required();
  cmd_eval->add_option("--ks", ev_ks);
  cmd_eval->add_option("--backend", ev_backend, "name recorded in the cards");
  cmd_eval->add_option("--output", ev_output)->required();

  // report
  std::string rp_run_dir;
  auto* cmd_report = app.add_subcommand("report", "render tables for a run");
  cmd_report->add_option("--run-dir", rp_run_dir)->required();

  // sample
  std::string sm_samples, sm_split = "test", sm_output;
  std::int64_t sm_population = 0, sm_n = 0;
  double sm_confidence = 0.95, sm_margin = 0.05;
  std::uint64_t sm_seed = 0;
  auto* cmd_sample =
      app.add_subcommand("sample", "statistically sized random draw");
  cmd_sample->add_option("--samples", sm_samples, "draw ids from this store");
  cmd_sample->add_option("--split", sm_split);
  cmd_sample->add_option("--population", sm_population,
                         "population size when no store is given");
  cmd_sample->add_option("--confidence", sm_confidence);
  cmd_sample->add_option("--margin", sm_margin);
  cmd_sample->add_option("--seed", sm_seed);
  cmd_sample->add_option("--n", sm_n, "override the computed size");
  cmd_sample->add_option("--output", sm_output, "write drawn ids here");

  // annotate
  std::string an_samples, an_cleaned, an_ids, an_rater, an_backend, an_output;
  bool an_resume = false;
  auto* cmd_annotate =
      app.add_subcommand("annotate", "interactive 0/1 developer scoring");
  cmd_annotate->add_option("--samples", an_samples)->required();
  cmd_annotate->add_option("--cleaned", an_cleaned)->required();
  cmd_annotate->add_option("--ids", an_ids)->required();
  cmd_annotate->add_option("--rater", an_rater)->required();
  cmd_annotate->add_option("--backend", an_backend)->required();
  cmd_annotate->add_option("--output", an_output)->required();
  cmd_annotate->add_flag("--resume", an_resume);

  // kappa
  std::string kp_annotations;
  auto* cmd_kappa = app.add_subcommand("kappa", "inter-rater agreement table");
  cmd_kappa->add_option("--annotations", kp_annotations)->required();

  // run
  std::string run_config_path, run_dir_override;
  auto* cmd_run = app.add_subcommand("run", "full pipeline from a config");
  cmd_run->add_option("--config", run_config_path)->required();
  cmd_run->add_option("--run-dir", run_dir_override, "override the config value");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_ingest) return run_ingest(ingest);
    if (*cmd_split) {
      return run_split(samples_path, output, train_pct, valid_pct, test_pct,
                       seed, pool);
    }
    if (*cmd_classify) return run_classify(cls_samples, cls_output);
    if (*cmd_index) return run_index(idx_samples, idx_output);
    if (*cmd_prompt) {
      return run_prompt(pr_samples, pr_mode, pr_index, pr_shots, pr_output);
    }
    if (*cmd_predict) {
      return run_predict(pd_prompts, pd_samples, pd_backend, pd_config, pd_n,
                         pd_output);
    }
    if (*cmd_clean) return run_clean(cl_raw, cl_output, cl_trace);
    if (*cmd_eval) {
      return run_eval(ev_cleaned, ev_samples, ev_ks, ev_backend, ev_output);
    }
    if (*cmd_report) {
      std::cout << harness::report(rp_run_dir);
      return 0;
    }
    if (*cmd_sample) {
      return run_sample(sm_samples, sm_population, sm_confidence, sm_margin,
                        sm_seed, sm_n, sm_split, sm_output);
    }
    if (*cmd_annotate) {
      return run_annotate(an_samples, an_cleaned, an_ids, an_rater, an_backend,
                          an_output, an_resume);
    }
    if (*cmd_kappa) return run_kappa(kp_annotations);
    if (*cmd_run) {
      auto config = harness::load_config(run_config_path);
      if (!run_dir_override.empty()) config.run_dir = run_dir_override;
      auto summary = harness::run(config);
      std::cout << harness::report(summary.run_dir);
      std::cout << "\npredicted=" << summary.n_predicted
                << " resumed=" << summary.n_resumed
                << " failed=" << summary.n_failed << "\n";
      return summary.n_failed > 0 ? 2 : 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
