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

#ifndef REPAIRBENCH_ANALYSIS_HPP_
#define REPAIRBENCH_ANALYSIS_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace repairbench::analysis {

// Two-sided standard normal quantile, needed for the confidence z value.
double normal_quantile(double p);

// Cochran sample size with finite-population correction, p = 0.5, rounded to
// the nearest integer: n0 = z^2 * 0.25 / e^2, n = n0 / (1 + (n0-1)/N).
std::int64_t sample_size(std::int64_t population, double confidence = 0.95,
                         double margin = 0.05);

// Uniform draw without replacement, deterministic per seed. Throws
// SampleTooLarge when n exceeds the id count.
std::vector<std::string> draw_sample(const std::vector<std::string>& ids,
                                     std::size_t n, std::uint64_t seed);

// Binary-score Cohen's kappa. When chance agreement is 1 (both raters
// constant) the convention is 1 for identical vectors and 0 otherwise.
// Throws LengthMismatch / EmptyInput.
double cohen_kappa(const std::vector<int>& scores_a,
                   const std::vector<int>& scores_b);

struct AnnotationRecord {
  std::string sample_id;
  std::string rater_id;
  std::string backend_name;
  int score = 0;  // 0 = not fulfilling the review, 1 = fulfilling
  std::string timestamp;
};

std::string to_json_line(const AnnotationRecord& record);
AnnotationRecord annotation_from_json_line(std::string_view line);

struct RaterBreakdown {
  std::string rater_id;
  std::size_t n_rated = 0;
  double fulfilling_pct = 0.0;
  double not_fulfilling_pct = 0.0;
};

struct BackendAgreement {
  std::string backend_name;
  double kappa = 0.0;
  std::size_t n_paired = 0;  // ids rated by both raters
  std::vector<RaterBreakdown> raters;        // by ascending rater id
  std::vector<std::string> incomplete_ids;   // rated by only one rater
};

// Per-backend kappa plus each rater's fulfilling / not-fulfilling split.
// Expects exactly two raters per backend; throws EmptyInput otherwise.
std::vector<BackendAgreement> agreement_table(
    const std::vector<AnnotationRecord>& records);

std::string render_agreement_table(const std::vector<BackendAgreement>& table);

}  // namespace repairbench::analysis

#endif  // REPAIRBENCH_ANALYSIS_HPP_
