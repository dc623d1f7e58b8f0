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

#include "repairbench/analysis.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <doctest.h>

#include "repairbench/errors.hpp"

using namespace repairbench;
using namespace repairbench::analysis;

TEST_CASE("analysis: the 97.5% normal quantile") {
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959964).epsilon(1e-6));
  CHECK(normal_quantile(0.5) == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
}

TEST_CASE("analysis: sample sizes for the study populations") {
  CHECK(sample_size(1719) == 314);
  CHECK(sample_size(2955) == 340);
  CHECK(sample_size(100) == 80);
}

TEST_CASE("analysis: sample size is monotone and bounded") {
  // bounded above by ceil(n0) = 385 at 95%/5%
  std::int64_t last = 0;
  for (std::int64_t population : {1, 10, 100, 1000, 10000, 1000000}) {
    std::int64_t n = sample_size(population);
    CHECK(n >= last);
    CHECK(n <= 385);
    last = n;
  }
}

TEST_CASE("analysis: draw_sample is deterministic and uniform-free of repeats") {
  std::vector<std::string> ids;
  for (int i = 0; i < 50; ++i) ids.push_back("s" + std::to_string(i));

  auto all = draw_sample(ids, ids.size(), 3);
  CHECK(std::set<std::string>(all.begin(), all.end()).size() == ids.size());

  auto first = draw_sample(ids, 10, 99);
  auto second = draw_sample(ids, 10, 99);
  CHECK(first == second);
  CHECK(std::set<std::string>(first.begin(), first.end()).size() == 10);

  CHECK_THROWS_AS(draw_sample(ids, ids.size() + 1, 0), SampleTooLarge);
}

TEST_CASE("analysis: kappa on the worked vectors") {
  CHECK(cohen_kappa({1, 1, 0, 0}, {1, 1, 0, 0}) == doctest::Approx(1.0));
  CHECK(cohen_kappa({1, 1, 0, 0}, {1, 0, 0, 1}) ==
        doctest::Approx(0.0).scale(1.0));
  CHECK(cohen_kappa({1, 1, 1, 0}, {1, 1, 0, 0}) == doctest::Approx(0.5));
}

TEST_CASE("analysis: kappa errors") {
  CHECK_THROWS_AS(cohen_kappa({1, 0}, {1}), LengthMismatch);
  CHECK_THROWS_AS(cohen_kappa({}, {}), EmptyInput);
}

TEST_CASE("analysis: degenerate chance agreement convention") {
  CHECK(cohen_kappa({1, 1, 1}, {1, 1, 1}) == doctest::Approx(1.0));
  CHECK(cohen_kappa({0, 0, 0}, {0, 0, 0}) == doctest::Approx(1.0));
  // both constant but different: p_e = 1 convention scores 0
  CHECK(cohen_kappa({1, 1, 1}, {0, 0, 0}) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("analysis: kappa symmetry and range over random vectors") {
  std::mt19937 rng(424242);
  std::uniform_int_distribution<int> bit(0, 1);
  std::uniform_int_distribution<int> len(1, 40);
  for (int trial = 0; trial < 2000; ++trial) {
    int n = len(rng);
    std::vector<int> a(n), b(n);
    for (int i = 0; i < n; ++i) {
      a[i] = bit(rng);
      b[i] = bit(rng);
    }
    double ab = cohen_kappa(a, b);
    double ba = cohen_kappa(b, a);
    CHECK(ab == doctest::Approx(ba).epsilon(1e-12));
    CHECK(ab >= -1.0 - 1e-12);
    CHECK(ab <= 1.0 + 1e-12);
    bool constant = std::all_of(a.begin(), a.end(),
                                [&](int v) { return v == a[0]; });
    if (!constant) {
      CHECK(cohen_kappa(a, a) == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("analysis: agreement table for a single backend") {
  std::vector<AnnotationRecord> records;
  for (int i = 0; i < 4; ++i) {
    records.push_back(AnnotationRecord{"s" + std::to_string(i), "r1",
                                       "oracle", 1, ""});
    records.push_back(AnnotationRecord{"s" + std::to_string(i), "r2",
                                       "oracle", 1, ""});
  }
  auto table = agreement_table(records);
  REQUIRE(table.size() == 1);
  CHECK(table[0].backend_name == "oracle");
  CHECK(table[0].kappa == doctest::Approx(1.0));
  REQUIRE(table[0].raters.size() == 2);
  for (const auto& rater : table[0].raters) {
    CHECK(rater.fulfilling_pct == doctest::Approx(100.0));
    CHECK(rater.not_fulfilling_pct == doctest::Approx(0.0));
    CHECK(rater.fulfilling_pct + rater.not_fulfilling_pct ==
          doctest::Approx(100.0));
  }
  CHECK(table[0].incomplete_ids.empty());
}

TEST_CASE("analysis: missing second rating is flagged incomplete") {
  std::vector<AnnotationRecord> records = {
      {"s0", "r1", "m", 1, ""}, {"s0", "r2", "m", 0, ""},
      {"s1", "r1", "m", 1, ""},  // s1 never rated by r2
  };
  auto table = agreement_table(records);
  REQUIRE(table.size() == 1);
  CHECK(table[0].n_paired == 1);
  REQUIRE(table[0].incomplete_ids.size() == 1);
  CHECK(table[0].incomplete_ids[0] == "s1");
}

TEST_CASE("analysis: annotation records round-trip") {
  AnnotationRecord record{"s1", "r2", "gpt", 1, "2026-08-10T00:00:00Z"};
  auto parsed = annotation_from_json_line(to_json_line(record));
  CHECK(parsed.sample_id == record.sample_id);
  CHECK(parsed.rater_id == record.rater_id);
  CHECK(parsed.backend_name == record.backend_name);
  CHECK(parsed.score == record.score);
  CHECK(parsed.timestamp == record.timestamp);
}

TEST_CASE("analysis: render includes every backend row") {
  std::vector<AnnotationRecord> records = {
      {"s0", "a", "m1", 1, ""}, {"s0", "b", "m1", 1, ""},
      {"s0", "a", "m2", 0, ""}, {"s0", "b", "m2", 1, ""},
  };
  std::string text = render_agreement_table(agreement_table(records));
  CHECK(text.find("m1") != std::string::npos);
  CHECK(text.find("m2") != std::string::npos);
  CHECK(text.find("kappa") != std::string::npos);
}
