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
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "repairbench/det_random.hpp"
#include "repairbench/errors.hpp"

namespace repairbench::analysis {

using nlohmann::json;

// Acklam's rational approximation of the inverse normal CDF, accurate to
// about 1.15e-9 over (0, 1). Good to the sixth decimal of z at 97.5%.
double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error("normal quantile requires p in (0, 1)");
  }
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  if (p < p_low) {
    double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
            c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p <= 1.0 - p_low) {
    double q = p - 0.5;
    double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r +
            a[5]) *
           q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  double q = std::sqrt(-2.0 * std::log(1.0 - p));
  return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
           c[5]) /
         ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

std::int64_t sample_size(std::int64_t population, double confidence,
                         double margin) {
  if (population < 1) throw EmptyInput("population must be at least 1");
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw Error("confidence must be in (0, 1)");
  }
  if (!(margin > 0.0)) throw Error("margin must be positive");

  double z = normal_quantile(1.0 - (1.0 - confidence) / 2.0);
  double n0 = z * z * 0.25 / (margin * margin);  // p = 0.5, maximum variance
  double n = n0 / (1.0 + (n0 - 1.0) / static_cast<double>(population));
  return static_cast<std::int64_t>(std::llround(n));
}

std::vector<std::string> draw_sample(const std::vector<std::string>& ids,
                                     std::size_t n, std::uint64_t seed) {
  if (n > ids.size()) {
    throw SampleTooLarge("requested " + std::to_string(n) + " of " +
                         std::to_string(ids.size()) + " ids");
  }
  std::vector<std::string> pool = ids;
  DetRng rng(seed);
  rng.shuffle(pool);
  pool.resize(n);
  return pool;
}

double cohen_kappa(const std::vector<int>& scores_a,
                   const std::vector<int>& scores_b) {
  if (scores_a.size() != scores_b.size()) {
    throw LengthMismatch("score vectors differ in length");
  }
  if (scores_a.empty()) throw EmptyInput("score vectors are empty");

  const double n = static_cast<double>(scores_a.size());
  double agree = 0.0, a_pos = 0.0, b_pos = 0.0;
  for (std::size_t i = 0; i < scores_a.size(); ++i) {
    if (scores_a[i] == scores_b[i]) ++agree;
    if (scores_a[i] == 1) ++a_pos;
    if (scores_b[i] == 1) ++b_pos;
  }
  double p_o = agree / n;
  double p_e = (a_pos / n) * (b_pos / n) +
               ((n - a_pos) / n) * ((n - b_pos) / n);
  if (p_e >= 1.0) return p_o >= 1.0 ? 1.0 : 0.0;
  return (p_o - p_e) / (1.0 - p_e);
}

std::string to_json_line(const AnnotationRecord& record) {
  json j;
  j["sample_id"] = record.sample_id;
  j["rater_id"] = record.rater_id;
  j["backend_name"] = record.backend_name;
  j["score"] = record.score;
  j["timestamp"] = record.timestamp;
  return j.dump();
}

AnnotationRecord annotation_from_json_line(std::string_view line) {
  json j = json::parse(line);
  AnnotationRecord record;
  record.sample_id = j.at("sample_id").get<std::string>();
  record.rater_id = j.at("rater_id").get<std::string>();
  record.backend_name = j.at("backend_name").get<std::string>();
  record.score = j.at("score").get<int>();
  record.timestamp = j.value("timestamp", "");
  return record;
}

std::vector<BackendAgreement> agreement_table(
    const std::vector<AnnotationRecord>& records) {
  if (records.empty()) throw EmptyInput("no annotation records");

  // backend -> rater -> sample -> score; later records win (re-annotation)
  std::map<std::string, std::map<std::string, std::map<std::string, int>>>
      by_backend;
  for (const auto& record : records) {
    by_backend[record.backend_name][record.rater_id][record.sample_id] =
        record.score;
  }

  std::vector<BackendAgreement> table;
  for (const auto& [backend, raters] : by_backend) {
    if (raters.size() != 2) {
      throw EmptyInput("backend " + backend + " has " +
                       std::to_string(raters.size()) +
                       " raters; agreement needs exactly 2");
    }
    BackendAgreement row;
    row.backend_name = backend;

    auto first = raters.begin();
    auto second = std::next(first);
    std::vector<int> a, b;
    std::set<std::string> all_ids;
    for (const auto& [id, _] : first->second) all_ids.insert(id);
    for (const auto& [id, _] : second->second) all_ids.insert(id);
    for (const std::string& id : all_ids) {
      auto ia = first->second.find(id);
      auto ib = second->second.find(id);
      if (ia == first->second.end() || ib == second->second.end()) {
        row.incomplete_ids.push_back(id);
        continue;
      }
      a.push_back(ia->second);
      b.push_back(ib->second);
    }
    row.n_paired = a.size();
    row.kappa = a.empty() ? 0.0 : cohen_kappa(a, b);

    for (const auto& [rater_id, scores] : raters) {
      RaterBreakdown breakdown;
      breakdown.rater_id = rater_id;
      breakdown.n_rated = scores.size();
      if (!scores.empty()) {
        double pos = 0.0;
        for (const auto& [_, score] : scores) pos += score == 1 ? 1.0 : 0.0;
        breakdown.fulfilling_pct =
            100.0 * pos / static_cast<double>(scores.size());
        breakdown.not_fulfilling_pct = 100.0 - breakdown.fulfilling_pct;
      }
      row.raters.push_back(std::move(breakdown));
    }
    table.push_back(std::move(row));
  }
  return table;
}

std::string render_agreement_table(const std::vector<BackendAgreement>& table) {
  std::ostringstream out;
  out << "backend                        kappa   not-fulfilling     fulfilling\n";
  for (const auto& row : table) {
    char line[160];
    std::snprintf(line, sizeof(line),
                  "%-30s %5.2f   %6.2f%% | %6.2f%%  %6.2f%% | %6.2f%%",
                  row.backend_name.c_str(), row.kappa,
                  row.raters[0].not_fulfilling_pct,
                  row.raters[1].not_fulfilling_pct,
                  row.raters[0].fulfilling_pct, row.raters[1].fulfilling_pct);
    out << line;
    if (!row.incomplete_ids.empty()) {
      out << "   [incomplete: " << row.incomplete_ids.size() << "]";
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace repairbench::analysis
