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

#include "repairbench/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <unordered_map>

namespace repairbench::metrics {
namespace {

constexpr double kEpsilon = 1e-9;
constexpr int kMaxOrder = 4;

using TokenTexts = std::vector<std::string>;

// n-gram key built by joining member tokens with '\x1f' (never in token text
// boundaries that matter).
std::string ngram_key(const TokenTexts& tokens, std::size_t start, int n) {
  std::string key;
  for (int i = 0; i < n; ++i) {
    if (i > 0) key += '\x1f';
    key += tokens[start + i];
  }
  return key;
}

std::unordered_map<std::string, std::size_t> count_ngrams(
    const TokenTexts& tokens, int n) {
  std::unordered_map<std::string, std::size_t> counts;
  if (tokens.size() < static_cast<std::size_t>(n)) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[ngram_key(tokens, i, n)];
  }
  return counts;
}

double brevity_penalty(std::size_t hyp_len, std::size_t ref_len) {
  if (hyp_len == 0) return 0.0;
  if (hyp_len >= ref_len) return 1.0;
  return std::exp(1.0 - static_cast<double>(ref_len) /
                            static_cast<double>(hyp_len));
}

// Geometric mean over the orders that have any denominator mass.
double combine_precisions(const std::array<double, kMaxOrder>& matched,
                          const std::array<double, kMaxOrder>& total) {
  double log_sum = 0.0;
  int orders = 0;
  for (int n = 0; n < kMaxOrder; ++n) {
    if (total[n] <= 0.0) continue;
    double num = matched[n] > 0.0 ? matched[n] : kEpsilon;
    log_sum += std::log(num / total[n]);
    ++orders;
  }
  if (orders == 0) return 0.0;
  return std::exp(log_sum / orders);
}

struct TreeDigest {
  std::unordered_map<std::string, std::size_t> subtrees;  // serialized -> count
  std::size_t total = 0;
};

// Serializes each internal subtree bottom-up: label(child, child, ...) with
// identifier leaves anonymized to ID.
std::string digest_node(const javatok::SyntaxTree& tree, std::size_t id,
                        TreeDigest& out) {
  const auto& node = tree.at(id);
  if (node.is_leaf()) {
    const javatok::Token& tok = tree.tokens[node.token];
    return tok.kind == javatok::TokenKind::Identifier ? "ID" : tok.text;
  }
  std::string repr = node.label;
  repr += '(';
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    if (i > 0) repr += ',';
    repr += digest_node(tree, node.children[i], out);
  }
  repr += ')';
  ++out.subtrees[repr];
  ++out.total;
  return repr;
}

TreeDigest digest(const javatok::SyntaxTree& tree) {
  TreeDigest out;
  digest_node(tree, tree.root, out);
  return out;
}

// var_slot multiset of def-use edges; position-independent so that structural
// matches survive surrounding edits.
std::unordered_map<std::size_t, std::size_t> edge_multiset(
    const std::vector<javatok::DataFlowEdge>& edges) {
  std::unordered_map<std::size_t, std::size_t> counts;
  for (const auto& edge : edges) ++counts[edge.var_slot];
  return counts;
}

}  // namespace

bool exact_match(std::string_view prediction, std::string_view target) {
  return corpus::normalize_whitespace(prediction) ==
         corpus::normalize_whitespace(target);
}

double bleu4(const std::vector<std::string>& hypotheses,
             const std::vector<std::string>& references) {
  std::array<double, kMaxOrder> matched{};
  std::array<double, kMaxOrder> total{};
  std::size_t hyp_len = 0, ref_len = 0;

  const std::size_t pairs = std::min(hypotheses.size(), references.size());
  for (std::size_t i = 0; i < pairs; ++i) {
    TokenTexts hyp = javatok::code_token_texts(hypotheses[i]);
    TokenTexts ref = javatok::code_token_texts(references[i]);
    hyp_len += hyp.size();
    ref_len += ref.size();
    for (int n = 1; n <= kMaxOrder; ++n) {
      auto hyp_counts = count_ngrams(hyp, n);
      auto ref_counts = count_ngrams(ref, n);
      for (const auto& [key, count] : hyp_counts) {
        total[n - 1] += static_cast<double>(count);
        auto it = ref_counts.find(key);
        if (it != ref_counts.end()) {
          matched[n - 1] += static_cast<double>(std::min(count, it->second));
        }
      }
    }
  }

  if (hyp_len == 0) return 0.0;
  double precision = combine_precisions(matched, total);
  return 100.0 * brevity_penalty(hyp_len, ref_len) * precision;
}

double weighted_ngram(const std::vector<javatok::Token>& hyp_tokens,
                      const std::vector<javatok::Token>& ref_tokens,
                      double keyword_weight) {
  auto weight_of = [&](const javatok::Token& tok) {
    return tok.kind == javatok::TokenKind::Keyword ? keyword_weight : 1.0;
  };

  // Precompute per-position prefix weights per side to price any n-gram.
  auto texts = [](const std::vector<javatok::Token>& toks) {
    TokenTexts out;
    out.reserve(toks.size());
    for (const auto& t : toks) out.push_back(t.text);
    return out;
  };
  TokenTexts hyp = texts(hyp_tokens);
  TokenTexts ref = texts(ref_tokens);

  std::array<double, kMaxOrder> matched{};
  std::array<double, kMaxOrder> total{};

  for (int n = 1; n <= kMaxOrder; ++n) {
    if (hyp.size() < static_cast<std::size_t>(n)) break;
    // weight of each distinct hyp n-gram = sum of member token weights,
    // taken from its first occurrence (identical texts may differ in kind
    // only in pathological inputs)
    std::unordered_map<std::string, std::size_t> hyp_counts;
    std::unordered_map<std::string, double> gram_weight;
    for (std::size_t i = 0; i + n <= hyp.size(); ++i) {
      std::string key = ngram_key(hyp, i, n);
      if (++hyp_counts[key] == 1) {
        double w = 0.0;
        for (int t = 0; t < n; ++t) w += weight_of(hyp_tokens[i + t]);
        gram_weight[key] = w;
      }
    }
    auto ref_counts = count_ngrams(ref, n);
    for (const auto& [key, count] : hyp_counts) {
      double w = gram_weight[key];
      total[n - 1] += w * static_cast<double>(count);
      auto it = ref_counts.find(key);
      if (it != ref_counts.end()) {
        matched[n - 1] +=
            w * static_cast<double>(std::min(count, it->second));
      }
    }
  }

  if (hyp.empty()) return 0.0;
  return brevity_penalty(hyp.size(), ref.size()) *
         combine_precisions(matched, total);
}

double ast_match(std::string_view hyp, std::string_view ref, bool* flagged) {
  if (flagged) *flagged = false;
  auto ref_parse = javatok::parse(javatok::lex(ref));
  auto hyp_parse = javatok::parse(javatok::lex(hyp));
  const javatok::SyntaxTree* ref_tree = javatok::tree_of(ref_parse);
  const javatok::SyntaxTree* hyp_tree = javatok::tree_of(hyp_parse);
  if (!ref_tree || !hyp_tree) {
    if (flagged) *flagged = true;
    return 0.0;
  }
  TreeDigest ref_digest = digest(*ref_tree);
  TreeDigest hyp_digest = digest(*hyp_tree);
  if (ref_digest.total == 0) return 1.0;  // both reduce to an empty program
  std::size_t found = 0;
  for (const auto& [repr, count] : ref_digest.subtrees) {
    auto it = hyp_digest.subtrees.find(repr);
    if (it != hyp_digest.subtrees.end()) {
      found += std::min(count, it->second);
    }
  }
  return static_cast<double>(found) / static_cast<double>(ref_digest.total);
}

double dataflow_match(std::string_view hyp, std::string_view ref,
                      bool* excluded) {
  if (excluded) *excluded = false;
  auto ref_parse = javatok::parse(javatok::lex(ref));
  const javatok::SyntaxTree* ref_tree = javatok::tree_of(ref_parse);
  if (!ref_tree) {
    // no reference flow facts to check against
    if (excluded) *excluded = true;
    return 0.0;
  }
  auto ref_edges = javatok::dataflow(*ref_tree);
  if (ref_edges.empty()) {
    if (excluded) *excluded = true;
    return 0.0;
  }

  auto hyp_parse = javatok::parse(javatok::lex(hyp));
  const javatok::SyntaxTree* hyp_tree = javatok::tree_of(hyp_parse);
  if (!hyp_tree) return 0.0;

  auto ref_counts = edge_multiset(ref_edges);
  auto hyp_counts = edge_multiset(javatok::dataflow(*hyp_tree));
  std::size_t found = 0;
  for (const auto& [slot, count] : ref_counts) {
    auto it = hyp_counts.find(slot);
    if (it != hyp_counts.end()) found += std::min(count, it->second);
  }
  return static_cast<double>(found) / static_cast<double>(ref_edges.size());
}

double combine_codebleu(double ngram, double weighted, double ast,
                        double dataflow, bool dataflow_excluded,
                        const CodeBleuWeights& weights) {
  double w_ngram = weights.ngram;
  double w_weighted = weights.weighted_ngram;
  double w_ast = weights.ast;
  double w_flow = dataflow_excluded ? 0.0 : weights.dataflow;
  double w_sum = w_ngram + w_weighted + w_ast + w_flow;
  if (w_sum <= 0.0) return 0.0;
  double value = w_ngram * ngram + w_weighted * weighted + w_ast * ast +
                 w_flow * dataflow;
  return 100.0 * value / w_sum;
}

SampleScore codebleu(std::string_view hyp, std::string_view ref,
                     const CodeBleuWeights& weights) {
  SampleScore score;
  if (exact_match(hyp, ref)) {
    // Equal texts match perfectly on every component, parseable or not.
    score.ngram = score.weighted_ngram = score.ast = score.dataflow = 1.0;
    score.codebleu = 100.0;
    return score;
  }

  auto hyp_tokens = javatok::code_tokens(hyp);
  auto ref_tokens = javatok::code_tokens(ref);
  score.ngram = bleu4({std::string(hyp)}, {std::string(ref)}) / 100.0;
  score.weighted_ngram =
      weighted_ngram(hyp_tokens, ref_tokens, weights.keyword_weight);
  score.ast = ast_match(hyp, ref, &score.parse_flagged);
  score.dataflow = dataflow_match(hyp, ref, &score.dataflow_excluded);
  score.codebleu =
      combine_codebleu(score.ngram, score.weighted_ngram, score.ast,
                       score.dataflow, score.dataflow_excluded, weights);
  return score;
}

double top_k_accuracy(const std::vector<ScoredSample>& samples, int k) {
  std::size_t scored = 0, hits = 0;
  for (const auto& sample : samples) {
    if (sample.failed) continue;
    ++scored;
    std::size_t limit = std::min(sample.predictions.size(),
                                 static_cast<std::size_t>(std::max(k, 0)));
    for (std::size_t i = 0; i < limit; ++i) {
      if (exact_match(sample.predictions[i], sample.target)) {
        ++hits;
        break;
      }
    }
  }
  if (scored == 0) return 0.0;
  return 100.0 * static_cast<double>(hits) / static_cast<double>(scored);
}

ScoreCard score(const std::vector<ScoredSample>& samples,
                const std::vector<int>& ks, const CodeBleuWeights& weights) {
  ScoreCard card;
  std::vector<std::string> hyps, refs;
  double sum_codebleu = 0.0, sum_ngram = 0.0, sum_weighted = 0.0;
  double sum_ast = 0.0, sum_flow = 0.0;
  std::size_t flow_participants = 0;

  for (const auto& sample : samples) {
    if (sample.failed) {
      ++card.n_failed;
      continue;
    }
    ++card.n_scored;
    std::string top1 =
        sample.predictions.empty() ? std::string() : sample.predictions[0];
    hyps.push_back(top1);
    refs.push_back(sample.target);

    SampleScore s = codebleu(top1, sample.target, weights);
    sum_codebleu += s.codebleu;
    sum_ngram += s.ngram;
    sum_weighted += s.weighted_ngram;
    sum_ast += s.ast;
    if (!s.dataflow_excluded) {
      sum_flow += s.dataflow;
      ++flow_participants;
    } else {
      ++card.n_dataflow_excluded;
    }
    if (s.parse_flagged) ++card.n_parse_flagged;
  }

  for (int k : ks) card.top_k_accuracy[k] = top_k_accuracy(samples, k);
  card.bleu4 = bleu4(hyps, refs);
  if (card.n_scored > 0) {
    double n = static_cast<double>(card.n_scored);
    card.codebleu = sum_codebleu / n;
    card.ngram = 100.0 * sum_ngram / n;
    card.weighted_ngram = 100.0 * sum_weighted / n;
    card.ast_match = 100.0 * sum_ast / n;
    card.dataflow_match =
        flow_participants > 0
            ? 100.0 * sum_flow / static_cast<double>(flow_participants)
            : 0.0;
  }
  return card;
}

std::map<corpus::FixCategory, ScoreCard> per_category_report(
    const std::vector<ScoredSample>& samples, const std::vector<int>& ks,
    const CodeBleuWeights& weights) {
  std::map<corpus::FixCategory, std::vector<ScoredSample>> buckets;
  using corpus::FixCategory;
  for (FixCategory c : {FixCategory::Insert, FixCategory::Delete,
                        FixCategory::Update}) {
    buckets[c];
  }
  for (const auto& sample : samples) buckets[sample.category].push_back(sample);

  std::map<corpus::FixCategory, ScoreCard> report;
  for (auto& [category, subset] : buckets) {
    report[category] = score(subset, ks, weights);
  }
  return report;
}

}  // namespace repairbench::metrics
