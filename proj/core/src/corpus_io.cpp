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

#include <fstream>
#include <string>

#include <json.hpp>

#include "repairbench/corpus.hpp"
#include "repairbench/errors.hpp"

namespace repairbench::corpus {

using nlohmann::json;

std::string to_json_line(const RepairSample& sample) {
  json j;
  j["id"] = sample.id;
  j["dataset"] = to_string(sample.dataset);
  j["buggy_code"] = sample.buggy_code;
  j["review"] = sample.review;
  j["target"] = sample.target;
  j["category"] = to_string(sample.category);
  j["split"] = to_string(sample.split);
  return j.dump();
}

RepairSample from_json_line(std::string_view line) {
  json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) {
    throw MalformedRecord("sample store line is not a JSON object");
  }
  for (const char* field :
       {"id", "dataset", "buggy_code", "review", "target", "category",
        "split"}) {
    if (!j.contains(field)) {
      throw MalformedRecord(std::string("sample store line missing field: ") +
                            field);
    }
  }
  RepairSample sample;
  sample.id = j["id"].get<std::string>();
  sample.dataset = dataset_kind_from(j["dataset"].get<std::string>());
  sample.buggy_code = j["buggy_code"].get<std::string>();
  sample.review = j["review"].get<std::string>();
  sample.target = j["target"].get<std::string>();
  sample.category = category_from(j["category"].get<std::string>());
  sample.split = split_from(j["split"].get<std::string>());
  return sample;
}

std::vector<RepairSample> load_store(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open sample store: " + path.string());
  std::vector<RepairSample> samples;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    samples.push_back(from_json_line(line));
  }
  return samples;
}

void save_store(const std::filesystem::path& path,
                const std::vector<RepairSample>& samples) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write sample store: " + path.string());
  for (const auto& sample : samples) out << to_json_line(sample) << '\n';
}

}  // namespace repairbench::corpus
