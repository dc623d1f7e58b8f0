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

#ifndef REPAIRBENCH_ERRORS_HPP_
#define REPAIRBENCH_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace repairbench {

// Base of every error this library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Corpus ingestion.
struct MissingMarker : Error {
  using Error::Error;
};
struct MissingReview : Error {
  using Error::Error;
};
struct MalformedRecord : Error {
  using Error::Error;
};

// Retrieval.
struct EmptyCorpus : Error {
  using Error::Error;
};

// Prompt construction.
struct ShotFromNonTrainSplit : Error {
  using Error::Error;
};

// Backends.
struct IncompatiblePromptMode : Error {
  using Error::Error;
};
struct BackendExhausted : Error {
  using Error::Error;
};
struct AuthMissing : Error {
  using Error::Error;
};

// Developer analysis.
struct LengthMismatch : Error {
  using Error::Error;
};
struct EmptyInput : Error {
  using Error::Error;
};
struct SampleTooLarge : Error {
  using Error::Error;
};

// Reporting.
struct NoRuns : Error {
  using Error::Error;
};

}  // namespace repairbench

#endif  // REPAIRBENCH_ERRORS_HPP_
