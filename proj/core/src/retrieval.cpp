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

#include "repairbench/retrieval.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>

#include <json.hpp>

#include "repairbench/errors.hpp"

namespace repairbench::retrieval {

using nlohmann::json;

double SparseVector::dot(const SparseVector& other) const {
  double sum = 0.0;
  auto a = entries.begin();
  auto b = other.entries.begin();
  while (a != entries.end() && b != other.entries.end()) {
    if (a->first < b->first) {
      ++a;
    } else if (b->first < a->first) {
      ++b;
    } else {
      sum += a->second * b->second;
      ++a;
      ++b;
    }
  }
  return sum;
}

double SparseVector::norm() const {
  double sum = 0.0;
  for (const auto& [col, value] : entries) sum += value * value;
  return std::sqrt(sum);
}

std::vector<std::string> tokenize_review(std::string_view text) {
  std::vector<std::string> terms;
  std::string term;
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      term += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (!term.empty()) {
      terms.push_back(std::move(term));
      term.clear();
    }
  }
  if (!term.empty()) terms.push_back(std::move(term));
  return terms;
}

namespace {

SparseVector weigh_and_normalize(const std::map<std::size_t, std::size_t>& tf,
                                 const std::vector<double>& idf) {
  SparseVector vec;
  vec.entries.reserve(tf.size());
  for (const auto& [col, count] : tf) {
    vec.entries.emplace_back(col, static_cast<double>(count) * idf[col]);
  }
  double norm = vec.norm();
  if (norm > 0.0) {
    for (auto& [col, value] : vec.entries) value /= norm;
  }
  return vec;
}

}  // namespace

TfidfIndex build_index(const std::vector<std::string>& doc_ids,
                       const std::vector<std::string>& reviews) {
  if (reviews.empty()) throw EmptyCorpus("no training reviews to index");
  if (doc_ids.size() != reviews.size()) {
    throw Error("doc id / review count mismatch");
  }

  TfidfIndex index;
  index.doc_ids = doc_ids;

  std::vector<std::vector<std::string>> tokenized(reviews.size());
  for (std::size_t d = 0; d < reviews.size(); ++d) {
    tokenized[d] = tokenize_review(reviews[d]);
    for (const std::string& term : tokenized[d]) {
      index.vocabulary.emplace(term, index.vocabulary.size());
    }
  }

  std::vector<std::size_t> df(index.vocabulary.size(), 0);
  for (const auto& terms : tokenized) {
    std::vector<bool> seen(index.vocabulary.size(), false);
    for (const std::string& term : terms) {
      std::size_t col = index.vocabulary.at(term);
      if (!seen[col]) {
        seen[col] = true;
        ++df[col];
      }
    }
  }

  const double n_docs = static_cast<double>(reviews.size());
  index.idf.resize(df.size());
  for (std::size_t col = 0; col < df.size(); ++col) {
    index.idf[col] =
        std::log((1.0 + n_docs) / (1.0 + static_cast<double>(df[col]))) + 1.0;
  }

  index.doc_vectors.reserve(reviews.size());
  for (const auto& terms : tokenized) {
    std::map<std::size_t, std::size_t> tf;
    for (const std::string& term : terms) ++tf[index.vocabulary.at(term)];
    index.doc_vectors.push_back(weigh_and_normalize(tf, index.idf));
  }
  return index;
}

SparseVector vectorize(const TfidfIndex& index, std::string_view review) {
  std::map<std::size_t, std::size_t> tf;
  for (const std::string& term : tokenize_review(review)) {
    auto it = index.vocabulary.find(term);
    if (it != index.vocabulary.end()) ++tf[it->second];
  }
  return weigh_and_normalize(tf, index.idf);
}

std::vector<ScoredDoc> top_k_similar(const TfidfIndex& index,
                                     std::string_view query_review,
                                     std::size_t k) {
  SparseVector query = vectorize(index, query_review);

  std::vector<std::size_t> order(index.doc_vectors.size());
  std::vector<double> scores(index.doc_vectors.size());
  for (std::size_t d = 0; d < index.doc_vectors.size(); ++d) {
    order[d] = d;
    scores[d] = query.is_zero() ? 0.0 : query.dot(index.doc_vectors[d]);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     if (scores[a] != scores[b]) return scores[a] > scores[b];
                     return index.doc_ids[a] < index.doc_ids[b];
                   });

  std::vector<ScoredDoc> out;
  out.reserve(std::min(k, order.size()));
  for (std::size_t i = 0; i < order.size() && i < k; ++i) {
    out.push_back(ScoredDoc{index.doc_ids[order[i]], scores[order[i]]});
  }
  return out;
}

void save_index(const std::filesystem::path& path, const TfidfIndex& index) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write index: " + path.string());
  json meta;
  meta["kind"] = "meta";
  meta["n_docs"] = index.doc_ids.size();
  out << meta.dump() << '\n';
  // terms ordered by column so a reload rebuilds identical structures
  std::vector<const std::string*> by_col(index.vocabulary.size());
  for (const auto& [term, col] : index.vocabulary) by_col[col] = &term;
  for (std::size_t col = 0; col < by_col.size(); ++col) {
    json j;
    j["kind"] = "term";
    j["term"] = *by_col[col];
    j["col"] = col;
    j["idf"] = index.idf[col];
    out << j.dump() << '\n';
  }
  for (std::size_t d = 0; d < index.doc_ids.size(); ++d) {
    json j;
    j["kind"] = "doc";
    j["id"] = index.doc_ids[d];
    json entries = json::array();
    for (const auto& [col, value] : index.doc_vectors[d].entries) {
      entries.push_back(json::array({col, value}));
    }
    j["entries"] = std::move(entries);
    out << j.dump() << '\n';
  }
}

TfidfIndex load_index(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open index: " + path.string());
  TfidfIndex index;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "term") {
      std::size_t col = j.at("col").get<std::size_t>();
      index.vocabulary[j.at("term").get<std::string>()] = col;
      if (index.idf.size() <= col) index.idf.resize(col + 1);
      index.idf[col] = j.at("idf").get<double>();
    } else if (kind == "doc") {
      index.doc_ids.push_back(j.at("id").get<std::string>());
      SparseVector vec;
      for (const auto& entry : j.at("entries")) {
        vec.entries.emplace_back(entry[0].get<std::size_t>(),
                                 entry[1].get<double>());
      }
      index.doc_vectors.push_back(std::move(vec));
    }
  }
  if (index.doc_ids.empty()) throw EmptyCorpus("index file has no documents");
  return index;
}

}  // namespace repairbench::retrieval
