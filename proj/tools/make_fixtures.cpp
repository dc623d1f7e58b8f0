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

// Generates the synthetic fixture corpus used by the tests: parseable Java
// snippets with a marked focus region, a fix in one of the three categories,
// and a review that is unique per sample (so TF-IDF self-queries have a
// single best answer).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "repairbench/corpus.hpp"

namespace {

using repairbench::corpus::DatasetKind;
using repairbench::corpus::FixCategory;
using repairbench::corpus::RepairSample;
using repairbench::corpus::Split;

RepairSample make_sample(int i, int n_train, int n_valid, int total) {
  const bool tufano = i % 2 == 0;
  const int shape = i % 3;  // rotates insert / delete / update
  const std::string tag = std::to_string(i);

  std::string focus_buggy, focus_fixed;
  FixCategory category;
  switch (shape) {
    case 0:  // insert: the fix adds a statement
      focus_buggy = "count" + tag + " = count" + tag + " + 1 ;";
      focus_fixed = focus_buggy + " total" + tag + " += count" + tag + " ;";
      category = FixCategory::Insert;
      break;
    case 1:  // delete: the fix removes the focus entirely
      focus_buggy = "log" + tag + " . debug ( \"state\" ) ;";
      focus_fixed = "";
      category = FixCategory::Delete;
      break;
    default:  // update: the fix rewrites the focus
      focus_buggy = "return cached" + tag + " ;";
      focus_fixed = "return fresh" + tag + " ( ) ;";
      category = FixCategory::Update;
      break;
  }

  const std::string prefix = "int v" + tag + " = seed" + tag + " ( ) ; ";
  const std::string suffix = " ; use ( v" + tag + " ) ;";
  // a trailing statement keeps delete-shaped methods parseable

  RepairSample sample;
  sample.id = "fx-" + std::string(i < 10 ? "00" : i < 100 ? "0" : "") + tag;
  sample.dataset = tufano ? DatasetKind::TufanoStyle : DatasetKind::R4RStyle;
  sample.category = category;
  sample.split = i < n_train            ? Split::Train
                 : i < n_train + n_valid ? Split::Validation
                                         : Split::Test;

  const char* verbs[] = {"insert", "drop", "rewrite"};
  sample.review = std::string(verbs[shape]) + " the marked statement in block" +
                  tag + " per the reviewer note";

  if (tufano) {
    sample.buggy_code =
        prefix + "START " + focus_buggy + " END" + suffix;
    std::string fixed_focus = focus_fixed.empty() ? " " : " " + focus_fixed;
    sample.target = repairbench::corpus::normalize_whitespace(
        prefix + fixed_focus + suffix);
  } else {
    sample.buggy_code =
        prefix + "|startfocus| " + focus_buggy + " |endfocus|" + suffix;
    sample.target = focus_fixed.empty()
                        ? std::string(repairbench::corpus::kDeleteToken)
                        : focus_fixed;
  }
  sample.buggy_code = repairbench::corpus::normalize_whitespace(sample.buggy_code);
  (void)total;
  return sample;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"synthetic fixture corpus generator"};
  std::string output = "synthetic_corpus.jsonl";
  int count = 200;
  int n_train = 140;
  int n_valid = 30;
  app.add_option("--output", output);
  app.add_option("--count", count);
  app.add_option("--train", n_train);
  app.add_option("--valid", n_valid);
  CLI11_PARSE(app, argc, argv);

  std::vector<RepairSample> samples;
  samples.reserve(count);
  for (int i = 0; i < count; ++i) {
    samples.push_back(make_sample(i, n_train, n_valid, count));
  }
  repairbench::corpus::save_store(output, samples);
  std::cout << "wrote " << samples.size() << " samples to " << output << "\n";
  return 0;
}
