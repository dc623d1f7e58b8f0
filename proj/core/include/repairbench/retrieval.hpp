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

#ifndef REPAIRBENCH_RETRIEVAL_HPP_
#define REPAIRBENCH_RETRIEVAL_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace repairbench::retrieval {

// Sparse vector over vocabulary columns, entries sorted by column.
struct SparseVector {
  std::vector<std::pair<std::size_t, double>> entries;

  double dot(const SparseVector& other) const;
  double norm() const;
  bool is_zero() const { return entries.empty(); }
};

// TF-IDF index over training-set reviews. tf is the raw term count,
// idf(t) = ln((1+N)/(1+df(t))) + 1, and every document vector is
// L2-normalized (zero vectors stay zero).
struct TfidfIndex {
  std::unordered_map<std::string, std::size_t> vocabulary;  // term -> column
  std::vector<double> idf;                                  // by column
  std::vector<SparseVector> doc_vectors;  // unit norm, aligned with doc_ids
  std::vector<std::string> doc_ids;
};

// Lowercases and splits on any non-alphanumeric byte; empty terms dropped.
std::vector<std::string> tokenize_review(std::string_view text);

TfidfIndex build_index(const std::vector<std::string>& doc_ids,
                       const std::vector<std::string>& reviews);

// Query vector in the index's vocabulary space; out-of-vocabulary terms are
// ignored. L2-normalized like document vectors.
SparseVector vectorize(const TfidfIndex& index, std::string_view review);

struct ScoredDoc {
  std::string id;
  double score = 0.0;
};

// Cosine ranking, ties broken by ascending doc id. A query sharing no
// vocabulary scores 0 against everything and the first k ids come back.
std::vector<ScoredDoc> top_k_similar(const TfidfIndex& index,
                                     std::string_view query_review,
                                     std::size_t k = 3);

void save_index(const std::filesystem::path& path, const TfidfIndex& index);
TfidfIndex load_index(const std::filesystem::path& path);

}  // namespace repairbench::retrieval

#endif  // REPAIRBENCH_RETRIEVAL_HPP_
