// Copyright 2026 The Interview Eval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace interview {

// Base of every error raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input: records, configs, arguments.
class InputError : public Error {
 public:
  using Error::Error;
};

// Correlation requested on data where it is not defined (zero variance,
// all ties, fewer than two points).
class UndefinedCorrelation : public Error {
 public:
  using Error::Error;
};

// A candidate could not produce an answer (remote backend down, timeout).
class CandidateUnavailable : public Error {
 public:
  CandidateUnavailable(std::string question_id, const std::string& what)
      : Error("candidate unavailable on question '" + question_id + "': " + what),
        question_id_(std::move(question_id)) {}

  const std::string& question_id() const noexcept { return question_id_; }

 private:
  std::string question_id_;
};

}  // namespace interview
