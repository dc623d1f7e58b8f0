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

#include <json.hpp>

#include "repairbench/metrics.hpp"

namespace repairbench::metrics {

using nlohmann::json;

std::string to_json_line(const ScoreCardRecord& record) {
  json j;
  j["backend"] = record.backend;
  j["split"] = record.split;
  j["category"] = record.category;
  j["fingerprint"] = record.fingerprint;
  j["template_version"] = record.template_version;
  j["tokenizer_version"] = record.tokenizer_version;
  j["weights"] = {{"ngram", record.weights.ngram},
                  {"weighted_ngram", record.weights.weighted_ngram},
                  {"ast", record.weights.ast},
                  {"dataflow", record.weights.dataflow},
                  {"keyword_weight", record.weights.keyword_weight}};
  json top_k = json::object();
  for (const auto& [k, value] : record.card.top_k_accuracy) {
    top_k[std::to_string(k)] = value;
  }
  j["top_k_accuracy"] = std::move(top_k);
  j["bleu4"] = record.card.bleu4;
  j["codebleu"] = record.card.codebleu;
  j["components"] = {{"ngram", record.card.ngram},
                     {"weighted_ngram", record.card.weighted_ngram},
                     {"ast_match", record.card.ast_match},
                     {"dataflow_match", record.card.dataflow_match}};
  j["n_scored"] = record.card.n_scored;
  j["n_failed"] = record.card.n_failed;
  j["n_parse_flagged"] = record.card.n_parse_flagged;
  j["n_dataflow_excluded"] = record.card.n_dataflow_excluded;
  j["n_degenerate"] = record.card.n_degenerate;
  return j.dump();
}

ScoreCardRecord scorecard_from_json_line(std::string_view line) {
  json j = json::parse(line);
  ScoreCardRecord record;
  record.backend = j.at("backend").get<std::string>();
  record.split = j.at("split").get<std::string>();
  record.category = j.at("category").get<std::string>();
  record.fingerprint = j.value("fingerprint", "");
  record.template_version = j.value("template_version", "");
  record.tokenizer_version = j.value("tokenizer_version", "");
  if (j.contains("weights")) {
    const auto& w = j["weights"];
    record.weights.ngram = w.value("ngram", 0.25);
    record.weights.weighted_ngram = w.value("weighted_ngram", 0.25);
    record.weights.ast = w.value("ast", 0.25);
    record.weights.dataflow = w.value("dataflow", 0.25);
    record.weights.keyword_weight = w.value("keyword_weight", 5.0);
  }
  for (const auto& [key, value] : j.at("top_k_accuracy").items()) {
    record.card.top_k_accuracy[std::stoi(key)] = value.get<double>();
  }
  record.card.bleu4 = j.at("bleu4").get<double>();
  record.card.codebleu = j.at("codebleu").get<double>();
  const auto& c = j.at("components");
  record.card.ngram = c.at("ngram").get<double>();
  record.card.weighted_ngram = c.at("weighted_ngram").get<double>();
  record.card.ast_match = c.at("ast_match").get<double>();
  record.card.dataflow_match = c.at("dataflow_match").get<double>();
  record.card.n_scored = j.at("n_scored").get<std::size_t>();
  record.card.n_failed = j.at("n_failed").get<std::size_t>();
  record.card.n_parse_flagged = j.value("n_parse_flagged", std::size_t{0});
  record.card.n_dataflow_excluded =
      j.value("n_dataflow_excluded", std::size_t{0});
  record.card.n_degenerate = j.value("n_degenerate", std::size_t{0});
  return record;
}

}  // namespace repairbench::metrics
