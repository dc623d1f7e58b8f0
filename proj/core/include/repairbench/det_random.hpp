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

#ifndef REPAIRBENCH_DET_RANDOM_HPP_
#define REPAIRBENCH_DET_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <vector>

namespace repairbench {

// Deterministic RNG for splits and sampling. std::mt19937_64 output is pinned
// by the standard; std::uniform_int_distribution and std::shuffle are not, so
// the bounded mapping and shuffle live here to keep runs byte-identical across
// standard libraries.
class DetRng {
 public:
  explicit DetRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform-ish value in [0, bound) via multiply-shift. The bias is at most
  // bound/2^64, far below anything observable at corpus scale.
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      using std::swap;
      swap(values[i - 1], values[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace repairbench

#endif  // REPAIRBENCH_DET_RANDOM_HPP_
