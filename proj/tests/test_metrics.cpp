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

#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <doctest.h>

using namespace repairbench;
using namespace repairbench::metrics;

namespace {

ScoredSample sample_of(std::string id, std::vector<std::string> predictions,
                       std::string target,
                       corpus::FixCategory category = corpus::FixCategory::Update) {
  ScoredSample s;
  s.sample_id = std::move(id);
  s.category = category;
  s.predictions = std::move(predictions);
  s.target = std::move(target);
  return s;
}

// Test-side subtree counter: walks the public tree shape directly and
// serializes with its own scheme, independent of the metric's digest code.
void oracle_subtrees(const javatok::SyntaxTree& tree, std::size_t id,
                     std::map<std::string, std::size_t>& out,
                     std::string& repr) {
  const auto& node = tree.at(id);
  if (node.is_leaf()) {
    const auto& tok = tree.tokens[node.token];
    repr = tok.kind == javatok::TokenKind::Identifier ? "<id>" : tok.text;
    return;
  }
  std::string mine = "[" + node.label;
  for (std::size_t child : node.children) {
    std::string child_repr;
    oracle_subtrees(tree, child, out, child_repr);
    mine += " " + child_repr;
  }
  mine += "]";
  ++out[mine];
  repr = mine;
}

double oracle_ast_match(const std::string& hyp, const std::string& ref) {
  auto ref_result = javatok::parse(javatok::lex(ref));
  auto hyp_result = javatok::parse(javatok::lex(hyp));
  const auto* ref_tree = javatok::tree_of(ref_result);
  const auto* hyp_tree = javatok::tree_of(hyp_result);
  REQUIRE(ref_tree);
  REQUIRE(hyp_tree);
  std::map<std::string, std::size_t> ref_counts, hyp_counts;
  std::string repr;
  oracle_subtrees(*ref_tree, ref_tree->root, ref_counts, repr);
  oracle_subtrees(*hyp_tree, hyp_tree->root, hyp_counts, repr);
  std::size_t total = 0, found = 0;
  for (const auto& [key, count] : ref_counts) {
    total += count;
    auto it = hyp_counts.find(key);
    if (it != hyp_counts.end()) found += std::min(count, it->second);
  }
  REQUIRE(total > 0);
  return static_cast<double>(found) / static_cast<double>(total);
}

}  // namespace

TEST_CASE("metrics: exact match is whitespace-insensitive") {
  CHECK(exact_match("return x ;", "return  x ;\n"));
  CHECK_FALSE(exact_match("return x ;", "return y ;"));
  CHECK(exact_match("", "   "));
}

TEST_CASE("metrics: exact match is reflexive and symmetric") {
  const std::string cases[] = {"", "a", "int x = 1;", " spaced\tout "};
  for (const auto& a : cases) {
    CHECK(exact_match(a, a));
    for (const auto& b : cases) {
      CHECK(exact_match(a, b) == exact_match(b, a));
    }
  }
}

TEST_CASE("metrics: bleu4 of identical corpora is exactly 100") {
  std::vector<std::string> corpus = {"int x = 1 ;", "return a + b ;",
                                     "if (a) { b(); }"};
  CHECK(bleu4(corpus, corpus) == 100.0);
}

TEST_CASE("metrics: bleu4 hand-evaluated case") {
  // hyp 4 tokens, ref 5: all precisions 1, BP = exp(1 - 5/4)
  double expected = 100.0 * std::exp(1.0 - 5.0 / 4.0);
  double actual = bleu4({"a b c d"}, {"a b c d e"});
  CHECK(actual == doctest::Approx(expected).epsilon(1e-6));
  CHECK(std::abs(actual - 77.88) < 0.01);
}

TEST_CASE("metrics: bleu4 of an empty hypothesis is 0") {
  CHECK(bleu4({""}, {"a b c"}) == 0.0);
}

TEST_CASE("metrics: bleu4 is 100 only for identical token streams") {
  CHECK(bleu4({"a b"}, {"b a"}) < 100.0);
  CHECK(bleu4({"x"}, {"x"}) == 100.0);  // short corpora skip absent orders
  CHECK(bleu4({"int  x ;"}, {"int x ;"}) == 100.0);  // whitespace-neutral
  CHECK(bleu4({"a // note"}, {"a"}) == 100.0);       // comments dropped
}

TEST_CASE("metrics: weighted ngram degenerates without keywords") {
  auto hyp = javatok::code_tokens("a b c d");
  auto ref = javatok::code_tokens("a b c e");
  auto plain = weighted_ngram(hyp, ref, 1.0);
  auto weighted = weighted_ngram(hyp, ref, 5.0);
  CHECK(plain == doctest::Approx(weighted).epsilon(1e-12));
}

TEST_CASE("metrics: keyword mismatches cost more than identifier mismatches") {
  // same differing position in both pairs, so the n-gram structure of the
  // mismatch is identical and only the token weights differ
  auto kw_ref = javatok::code_tokens("foo return bar ;");
  auto kw_hyp = javatok::code_tokens("foo break bar ;");
  auto id_ref = javatok::code_tokens("foo alpha bar ;");
  auto id_hyp = javatok::code_tokens("foo beta bar ;");
  CHECK(weighted_ngram(kw_hyp, kw_ref) < weighted_ngram(id_hyp, id_ref));
  CHECK(weighted_ngram(kw_ref, kw_ref) == doctest::Approx(1.0));
}

TEST_CASE("metrics: ast match is 1 for identical parseable code") {
  bool flagged = false;
  CHECK(ast_match("return 1;", "return 1;", &flagged) == doctest::Approx(1.0));
  CHECK_FALSE(flagged);
}

TEST_CASE("metrics: ast match penalizes the extra block") {
  double value = ast_match("return 1;", "{ return 1; }");
  CHECK(value < 1.0);
  CHECK(value == doctest::Approx(oracle_ast_match("return 1;", "{ return 1; }"))
                     .epsilon(1e-12));
}

TEST_CASE("metrics: ast match agrees with the subtree oracle") {
  const std::pair<std::string, std::string> pairs[] = {
      {"int a = 1; return a;", "int b = 1; return b;"},
      {"if (x) { f(); }", "if (x) { g(); } else { f(); }"},
      {"for (int i = 0; i < n; i++) sum += i;", "sum += n;"},
  };
  for (const auto& [hyp, ref] : pairs) {
    CHECK(ast_match(hyp, ref) ==
          doctest::Approx(oracle_ast_match(hyp, ref)).epsilon(1e-12));
  }
}

TEST_CASE("metrics: unparsable hypothesis scores 0 with a flag") {
  bool flagged = false;
  CHECK(ast_match("if (", "return 1;", &flagged) == 0.0);
  CHECK(flagged);
}

TEST_CASE("metrics: dataflow match is 1 for identical and renamed code") {
  bool excluded = false;
  CHECK(dataflow_match("int a = 1; return a;", "int a = 1; return a;",
                       &excluded) == doctest::Approx(1.0));
  CHECK_FALSE(excluded);
  // consistent renaming preserves var_slot edges
  CHECK(dataflow_match("int z = 1; return z;", "int a = 1; return a;") ==
        doctest::Approx(1.0));
}

TEST_CASE("metrics: dataflow without reference edges is excluded") {
  bool excluded = false;
  dataflow_match("return 1;", "return 2;", &excluded);
  CHECK(excluded);
}

TEST_CASE("metrics: codebleu combination arithmetic") {
  CodeBleuWeights weights;
  CHECK(combine_codebleu(1.0, 1.0, 0.5, 0.0, false, weights) ==
        doctest::Approx(62.5));
  CHECK(combine_codebleu(1.0, 1.0, 1.0, 1.0, false, weights) ==
        doctest::Approx(100.0));
  // excluded dataflow renormalizes over the remaining three
  CHECK(combine_codebleu(0.9, 0.9, 0.9, 0.0, true, weights) ==
        doctest::Approx(90.0));
}

TEST_CASE("metrics: exact match forces per-sample codebleu 100") {
  auto s = codebleu("return x ;", "return  x ;");
  CHECK(s.codebleu == doctest::Approx(100.0));
  // holds even when both sides are unparsable
  auto junk = codebleu("if (", "if (");
  CHECK(junk.codebleu == doctest::Approx(100.0));
  CHECK_FALSE(junk.parse_flagged);
}

TEST_CASE("metrics: codebleu components stay in range on random bytes") {
  std::mt19937 rng(31337);
  std::uniform_int_distribution<int> len(0, 64);
  std::uniform_int_distribution<int> byte(1, 255);
  for (int trial = 0; trial < 100; ++trial) {
    std::string hyp;
    int n = len(rng);
    for (int i = 0; i < n; ++i) hyp += static_cast<char>(byte(rng));
    auto s = codebleu(hyp, "int a = 1; return a;");
    CHECK(s.codebleu >= 0.0);
    CHECK(s.codebleu <= 100.0);
    for (double c : {s.ngram, s.weighted_ngram, s.ast, s.dataflow}) {
      CHECK(c >= 0.0);
      CHECK(c <= 1.0);
    }
  }
}

TEST_CASE("metrics: top-k counts any matching rank") {
  std::vector<ScoredSample> samples;
  samples.push_back(sample_of("a", {"wrong ;", "return x ;"}, "return x ;"));
  samples.push_back(sample_of("b", {"return y ;"}, "return y ;"));
  samples.push_back(sample_of("c", {}, "return z ;"));  // no predictions: miss

  CHECK(top_k_accuracy(samples, 1) == doctest::Approx(100.0 / 3.0));
  CHECK(top_k_accuracy(samples, 2) == doctest::Approx(200.0 / 3.0));
  // k beyond the candidate count clamps
  CHECK(top_k_accuracy(samples, 10) == doctest::Approx(200.0 / 3.0));
}

TEST_CASE("metrics: top-k is monotone in k") {
  std::mt19937 rng(7);
  std::vector<ScoredSample> samples;
  const char* texts[] = {"a ;", "b ;", "c ;"};
  for (int i = 0; i < 30; ++i) {
    std::vector<std::string> preds;
    for (int r = 0; r < 3; ++r) preds.push_back(texts[rng() % 3]);
    samples.push_back(sample_of("s" + std::to_string(i), preds,
                                texts[rng() % 3]));
  }
  double last = 0.0;
  for (int k = 1; k <= 4; ++k) {
    double acc = top_k_accuracy(samples, k);
    CHECK(acc >= last);
    last = acc;
  }
}

TEST_CASE("metrics: scorecard on a perfect corpus") {
  std::vector<ScoredSample> samples;
  samples.push_back(sample_of("a", {"int x = 1 ;"}, "int x = 1 ;",
                              corpus::FixCategory::Insert));
  samples.push_back(sample_of("b", {"return a ;"}, "return a ;",
                              corpus::FixCategory::Update));
  auto card = score(samples, {1, 5}, {});
  CHECK(card.top_k_accuracy.at(1) == doctest::Approx(100.0));
  CHECK(card.bleu4 == doctest::Approx(100.0));
  CHECK(card.codebleu == doctest::Approx(100.0));
  CHECK(card.n_scored == 2);
  CHECK(card.n_failed == 0);
}

TEST_CASE("metrics: failed samples leave the denominator") {
  std::vector<ScoredSample> samples;
  samples.push_back(sample_of("a", {"return x ;"}, "return x ;"));
  ScoredSample failed = sample_of("b", {}, "whatever ;");
  failed.failed = true;
  samples.push_back(failed);

  auto card = score(samples, {1}, {});
  CHECK(card.n_scored == 1);
  CHECK(card.n_failed == 1);
  CHECK(card.top_k_accuracy.at(1) == doctest::Approx(100.0));
}

TEST_CASE("metrics: per-category cards partition the corpus") {
  using corpus::FixCategory;
  std::vector<ScoredSample> samples;
  samples.push_back(sample_of("a", {"x ;"}, "x ;", FixCategory::Insert));
  samples.push_back(sample_of("b", {"y ;"}, "y ;", FixCategory::Delete));
  samples.push_back(sample_of("c", {"bad ;"}, "z ;", FixCategory::Delete));

  auto report = per_category_report(samples, {1}, {});
  CHECK(report.at(FixCategory::Insert).n_scored == 1);
  CHECK(report.at(FixCategory::Delete).n_scored == 2);
  CHECK(report.at(FixCategory::Update).n_scored == 0);  // explicit empty card
  CHECK(report.at(FixCategory::Update).empty());

  std::size_t total = 0;
  for (const auto& [category, card] : report) total += card.n_scored;
  CHECK(total == samples.size());

  CHECK(report.at(FixCategory::Delete).top_k_accuracy.at(1) ==
        doctest::Approx(50.0));
}

TEST_CASE("metrics: scorecard records round-trip") {
  ScoreCardRecord record;
  record.backend = "oracle";
  record.split = "test";
  record.category = "overall";
  record.fingerprint = "abc123";
  record.template_version = "v1";
  record.tokenizer_version = "javatok-1";
  record.card.top_k_accuracy[1] = 100.0;
  record.card.top_k_accuracy[5] = 100.0;
  record.card.bleu4 = 99.5;
  record.card.codebleu = 98.75;
  record.card.ngram = 97.0;
  record.card.weighted_ngram = 96.0;
  record.card.ast_match = 95.0;
  record.card.dataflow_match = 94.0;
  record.card.n_scored = 200;
  record.card.n_failed = 1;

  auto parsed = scorecard_from_json_line(to_json_line(record));
  CHECK(parsed.backend == record.backend);
  CHECK(parsed.category == record.category);
  CHECK(parsed.card.top_k_accuracy == record.card.top_k_accuracy);
  CHECK(parsed.card.bleu4 == doctest::Approx(record.card.bleu4));
  CHECK(parsed.card.codebleu == doctest::Approx(record.card.codebleu));
  CHECK(parsed.card.n_scored == record.card.n_scored);
  CHECK(parsed.weights.keyword_weight ==
        doctest::Approx(record.weights.keyword_weight));
}
