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

#include "repairbench/corpus.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include <doctest.h>

#include "repairbench/errors.hpp"
#include "repairbench/javatok.hpp"

using namespace repairbench;
using namespace repairbench::corpus;

namespace {

RepairSample tufano_sample(std::string id, std::string code,
                           std::string review, std::string target) {
  RawRecord raw;
  raw.id = std::move(id);
  raw.code = std::move(code);
  raw.review = std::move(review);
  raw.target = std::move(target);
  return parse_record(raw, DatasetKind::TufanoStyle);
}

// Brute-force LCS: enumerate all subsequences of the shorter side and check
// containment in the other. Independent of the DP in classify_tokens.
std::size_t brute_lcs(const std::vector<std::string>& a,
                      const std::vector<std::string>& b) {
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  std::size_t best = 0;
  for (std::size_t mask = 0; mask < (1u << small.size()); ++mask) {
    std::vector<const std::string*> candidate;
    for (std::size_t i = 0; i < small.size(); ++i) {
      if (mask & (1u << i)) candidate.push_back(&small[i]);
    }
    if (candidate.size() <= best) continue;
    std::size_t j = 0;
    for (const auto& item : large) {
      if (j < candidate.size() && *candidate[j] == item) ++j;
    }
    if (j == candidate.size()) best = candidate.size();
  }
  return best;
}

Classification brute_classify(const std::vector<std::string>& before,
                              const std::vector<std::string>& after) {
  std::size_t lcs = brute_lcs(before, after);
  std::size_t deletions = before.size() - lcs;
  std::size_t insertions = after.size() - lcs;
  if (deletions == 0 && insertions == 0) return {FixCategory::Update, true};
  if (deletions == 0) return {FixCategory::Insert, false};
  if (insertions == 0) return {FixCategory::Delete, false};
  return {FixCategory::Update, false};
}

}  // namespace

TEST_CASE("corpus: normalize_whitespace collapses runs") {
  CHECK(normalize_whitespace("int  x ;\n  y ;") == "int x ; y ;");
  CHECK(normalize_whitespace("abc") == "abc");
  CHECK(normalize_whitespace("  ") == "");
  CHECK(normalize_whitespace("\ta\r\nb\f") == "a b");
}

TEST_CASE("corpus: parse_record extracts the focus region") {
  auto sample = tufano_sample("t1", "a(); START b(); END c();", "fix b",
                              "a(); b(); d(); c();");
  FocusRegion region = focus_region(sample);
  CHECK(normalize_whitespace(region.body) == "b();");
  CHECK(sample.review == "fix b");
}

TEST_CASE("corpus: parse_record rejects missing markers") {
  RawRecord raw;
  raw.id = "t2";
  raw.code = "a(); START b(); c();";  // no END
  raw.review = "fix";
  raw.target = "a();";
  CHECK_THROWS_AS(parse_record(raw, DatasetKind::TufanoStyle), MissingMarker);
}

TEST_CASE("corpus: inline comment tags populate the review") {
  RawRecord raw;
  raw.id = "t3";
  raw.code =
      "m() { START x(); END } |startcomment| use a constant |endcomment|";
  raw.target = "m() { y(); }";
  auto sample = parse_record(raw, DatasetKind::TufanoStyle);
  CHECK(sample.review == "use a constant");
  CHECK(sample.buggy_code.find("|startcomment|") == std::string::npos);
}

TEST_CASE("corpus: records without review fail") {
  RawRecord raw;
  raw.id = "t4";
  raw.code = "START a(); END";
  raw.target = "b();";
  CHECK_THROWS_AS(parse_record(raw, DatasetKind::TufanoStyle), MissingReview);

  raw.review = "   ";
  CHECK_THROWS_AS(parse_record(raw, DatasetKind::TufanoStyle), MissingReview);
}

TEST_CASE("corpus: duplicate markers are malformed") {
  RawRecord raw;
  raw.id = "t5";
  raw.code = "START a(); END START b(); END";
  raw.review = "fix";
  raw.target = "c();";
  CHECK_THROWS_AS(parse_record(raw, DatasetKind::TufanoStyle), MalformedRecord);
}

TEST_CASE("corpus: empty r4r target becomes the delete token") {
  RawRecord raw;
  raw.id = "r1";
  raw.code = "a(); |startfocus| b(); |endfocus| c();";
  raw.review = "drop it";
  raw.target = "  ";
  auto sample = parse_record(raw, DatasetKind::R4RStyle);
  CHECK(sample.target == "|del|");
  CHECK(classify_fix(sample).category == FixCategory::Delete);
}

TEST_CASE("corpus: store round-trips samples") {
  auto sample = tufano_sample("t6", "START x = 1 ; END", "set two",
                              "x = 2 ;");
  sample.category = FixCategory::Update;
  sample.split = Split::Test;
  CHECK(from_json_line(to_json_line(sample)) == sample);
}

TEST_CASE("corpus: token_count combines lexer and review terms") {
  auto sample = tufano_sample("t7", "START int x = 1 ; END", "two words",
                              "int x = 2 ;");
  // START int x = 1 ; END -> 7 lexical tokens, review -> 2 terms
  CHECK(token_count(sample) == 9);
}

TEST_CASE("corpus: filter keeps the boundary and preserves content") {
  std::vector<RepairSample> samples;
  samples.push_back(tufano_sample("a", "START x END", "r", "y"));
  samples.push_back(tufano_sample("b", "START x y END", "r", "y"));

  auto counted = [](const RepairSample& s) { return s.id == "a" ? 512u : 513u; };
  auto result = filter_by_token_length(samples, 512, counted);
  REQUIRE(result.kept.size() == 1);
  REQUIRE(result.removed.size() == 1);
  CHECK(result.kept[0] == samples[0]);      // boundary kept, content untouched
  CHECK(result.removed[0] == samples[1]);   // boundary+1 removed
}

TEST_CASE("corpus: filter is stable on larger inputs") {
  std::vector<RepairSample> samples;
  for (int i = 0; i < 20; ++i) {
    samples.push_back(tufano_sample("s" + std::to_string(i),
                                    "START x" + std::to_string(i) + " END",
                                    "review", "fixed"));
  }
  auto result = filter_by_token_length(
      samples, 0, [](const RepairSample& s) {
        return s.id.size() % 2 == 0 ? 1u : 0u;  // odd ids kept (count 0)
      });
  for (std::size_t i = 1; i < result.kept.size(); ++i) {
    CHECK(result.kept[i - 1].id < result.kept[i].id);
  }
}

TEST_CASE("corpus: classify pure insertion") {
  auto sample = tufano_sample("c1", "START x = 1 ; END", "add y",
                              "x = 1 ; y = 2 ;");
  CHECK(classify_fix(sample).category == FixCategory::Insert);
}

TEST_CASE("corpus: classify r4r delete token") {
  RawRecord raw;
  raw.id = "c2";
  raw.code = "|startfocus| dead(); |endfocus|";
  raw.review = "remove";
  raw.target = "|del|";
  auto sample = parse_record(raw, DatasetKind::R4RStyle);
  CHECK(classify_fix(sample).category == FixCategory::Delete);
}

TEST_CASE("corpus: classify update via LCS oracle") {
  // one deletion plus one insertion
  auto before = javatok::code_token_texts("return a ;");
  auto after = javatok::code_token_texts("return b ;");
  auto expected = brute_classify(before, after);
  auto actual = classify_tokens(before, after);
  CHECK(expected.category == FixCategory::Update);
  CHECK(actual.category == expected.category);

  auto sample = tufano_sample("c3", "START return a ; END", "rename",
                              "return b ;");
  CHECK(classify_fix(sample).category == FixCategory::Update);
}

TEST_CASE("corpus: classify degenerate empty diff") {
  auto c = classify_tokens({"x"}, {"x"});
  CHECK(c.category == FixCategory::Update);
  CHECK(c.degenerate);
}

TEST_CASE("corpus: classify agrees with the brute-force oracle") {
  // exhaustive over short sequences on a 2-token alphabet; the acceptance
  // suite runs the full length-6 3-token sweep
  const std::vector<std::string> alphabet = {"a", "b"};
  std::vector<std::vector<std::string>> sequences{{}};
  for (std::size_t len = 1; len <= 4; ++len) {
    std::size_t count = 1;
    for (std::size_t i = 0; i < len; ++i) count *= alphabet.size();
    for (std::size_t code = 0; code < count; ++code) {
      std::vector<std::string> seq;
      std::size_t v = code;
      for (std::size_t i = 0; i < len; ++i) {
        seq.push_back(alphabet[v % alphabet.size()]);
        v /= alphabet.size();
      }
      sequences.push_back(std::move(seq));
    }
  }
  for (const auto& before : sequences) {
    for (const auto& after : sequences) {
      auto expected = brute_classify(before, after);
      auto actual = classify_tokens(before, after);
      CHECK(actual.category == expected.category);
      CHECK(actual.degenerate == expected.degenerate);
    }
  }
}

TEST_CASE("corpus: split honors exact fractions") {
  std::vector<RepairSample> samples;
  for (int i = 0; i < 100; ++i) {
    samples.push_back(tufano_sample("s" + std::to_string(i), "START x END",
                                    "review", "fixed"));
  }
  auto result = split_dataset(samples, SplitSpec::percent(90, 5, 5, 1));
  CHECK(result.train.size() == 90);
  CHECK(result.validation.size() == 5);
  CHECK(result.test.size() == 5);
}

TEST_CASE("corpus: split sizes follow the floor rule") {
  // 59,109 samples at 90/5/5: validation and test floor to 2,955 each and
  // the leftover lands in train
  std::vector<RepairSample> samples;
  samples.reserve(59109);
  RepairSample proto = tufano_sample("p", "START x END", "review", "fixed");
  for (int i = 0; i < 59109; ++i) {
    proto.id = "s" + std::to_string(i);
    samples.push_back(proto);
  }
  auto result = split_dataset(std::move(samples), SplitSpec::percent(90, 5, 5, 9));
  CHECK(result.train.size() == 53199);
  CHECK(result.validation.size() == 2955);
  CHECK(result.test.size() == 2955);
}

TEST_CASE("corpus: split is deterministic and partitions the input") {
  std::vector<RepairSample> samples;
  for (int i = 0; i < 57; ++i) {
    samples.push_back(tufano_sample("s" + std::to_string(i), "START x END",
                                    "review", "fixed"));
  }
  auto spec = SplitSpec::percent(80, 10, 10, 42);
  auto first = split_dataset(samples, spec);
  auto second = split_dataset(samples, spec);

  auto ids = [](const std::vector<RepairSample>& subset) {
    std::set<std::string> out;
    for (const auto& s : subset) out.insert(s.id);
    return out;
  };
  CHECK(ids(first.train) == ids(second.train));
  CHECK(ids(first.validation) == ids(second.validation));
  CHECK(ids(first.test) == ids(second.test));

  std::set<std::string> all = ids(first.train);
  for (const auto& s : first.validation) CHECK(all.insert(s.id).second);
  for (const auto& s : first.test) CHECK(all.insert(s.id).second);
  CHECK(all.size() == samples.size());
}

TEST_CASE("corpus: invalid split specs are rejected") {
  CHECK_THROWS_AS(
      split_dataset({}, SplitSpec{50, 10, 10, 100, 0}),  // sums to 70
      Error);
}
