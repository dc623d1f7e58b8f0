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

#ifndef REPAIRBENCH_METRICS_HPP_
#define REPAIRBENCH_METRICS_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "repairbench/corpus.hpp"
#include "repairbench/javatok.hpp"

namespace repairbench::metrics {

struct CodeBleuWeights {
  double ngram = 0.25;
  double weighted_ngram = 0.25;
  double ast = 0.25;
  double dataflow = 0.25;
  double keyword_weight = 5.0;  // unigram weight for Keyword tokens
};

// Whitespace-normalized byte equality; the primary metric.
bool exact_match(std::string_view prediction, std::string_view target);

// Corpus-level BLEU-4 as a percentage: geometric mean of modified 1..4-gram
// precisions times the brevity penalty. A zero match count is smoothed to
// epsilon; n-gram orders with an empty denominator (corpus shorter than n)
// drop out of the mean so identical corpora always score 100.
double bleu4(const std::vector<std::string>& hypotheses,
             const std::vector<std::string>& references);

// Sentence-level BLEU-style precision in [0, 1] over pre-lexed tokens, where
// every matched n-gram credits the sum of its token weights (Keyword tokens
// weigh keyword_weight, everything else 1).
double weighted_ngram(const std::vector<javatok::Token>& hyp_tokens,
                      const std::vector<javatok::Token>& ref_tokens,
                      double keyword_weight = 5.0);

// Fraction of reference internal subtrees (labeled shape, identifiers
// anonymized) found in the hypothesis tree. A parse failure on either side
// scores 0 and sets *flagged.
double ast_match(std::string_view hyp, std::string_view ref,
                 bool* flagged = nullptr);

// Fraction of reference def-use edges (var_slot-normalized) present in the
// hypothesis. With no reference edges the component is excluded (*excluded)
// and the caller renormalizes the remaining weights.
double dataflow_match(std::string_view hyp, std::string_view ref,
                      bool* excluded = nullptr);

// Per-sample CodeBLEU decomposition. `codebleu` is the weighted combination
// in [0, 100], with weights renormalized when dataflow is excluded. A
// whitespace-normalized exact match scores every component 1 outright.
struct SampleScore {
  double ngram = 0.0;
  double weighted_ngram = 0.0;
  double ast = 0.0;
  double dataflow = 0.0;
  bool parse_flagged = false;
  bool dataflow_excluded = false;
  double codebleu = 0.0;
};

SampleScore codebleu(std::string_view hyp, std::string_view ref,
                     const CodeBleuWeights& weights = {});

// The weighted-sum step alone, exposed so the arithmetic is testable.
double combine_codebleu(double ngram, double weighted, double ast,
                        double dataflow, bool dataflow_excluded,
                        const CodeBleuWeights& weights);

// --- corpus aggregation ---

struct ScoredSample {
  std::string sample_id;
  corpus::FixCategory category = corpus::FixCategory::Unclassified;
  std::vector<std::string> predictions;  // cleaned, rank order
  std::string target;
  bool failed = false;  // backend failure: excluded from denominators
};

struct ScoreCard {
  std::map<int, double> top_k_accuracy;  // k -> percentage
  double bleu4 = 0.0;
  double codebleu = 0.0;
  double ngram = 0.0;  // component means, as percentages
  double weighted_ngram = 0.0;
  double ast_match = 0.0;
  double dataflow_match = 0.0;
  std::size_t n_scored = 0;
  std::size_t n_failed = 0;
  std::size_t n_parse_flagged = 0;
  std::size_t n_dataflow_excluded = 0;
  std::size_t n_degenerate = 0;

  bool empty() const { return n_scored == 0; }
};

double top_k_accuracy(const std::vector<ScoredSample>& samples, int k);

// Full card over rank-1 texts (BLEU/CodeBLEU) plus top-k accuracies.
ScoreCard score(const std::vector<ScoredSample>& samples,
                const std::vector<int>& ks, const CodeBleuWeights& weights = {});

// Cards restricted to Insert/Delete/Update subsets. Empty categories come
// back with n_scored == 0 as the zero-denominator marker.
std::map<corpus::FixCategory, ScoreCard> per_category_report(
    const std::vector<ScoredSample>& samples, const std::vector<int>& ks,
    const CodeBleuWeights& weights = {});

// One persisted scorecard: (backend, split, category) plus the config
// fingerprint and versions that make runs comparable.
struct ScoreCardRecord {
  std::string backend;
  std::string split;
  std::string category;  // "overall" or a fix category
  ScoreCard card;
  std::string fingerprint;
  CodeBleuWeights weights;
  std::string template_version;
  std::string tokenizer_version;
};

std::string to_json_line(const ScoreCardRecord& record);
ScoreCardRecord scorecard_from_json_line(std::string_view line);

}  // namespace repairbench::metrics

#endif  // REPAIRBENCH_METRICS_HPP_
