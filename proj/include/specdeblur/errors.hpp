// Copyright 2026 The specdeblur Authors
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

#ifndef SPECDEBLUR_ERRORS_HPP_
#define SPECDEBLUR_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace specdeblur {

enum class ErrorCategory {
  kInvalidArgument,
  kDegenerateInput,
  kIo,
  kConvergence,
};

// All library failures are reported through this type; the category drives
// the command-line exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

[[noreturn]] inline void ThrowInvalid(const std::string& what) {
  throw Error(ErrorCategory::kInvalidArgument, what);
}

[[noreturn]] inline void ThrowDegenerate(const std::string& what) {
  throw Error(ErrorCategory::kDegenerateInput, what);
}

[[noreturn]] inline void ThrowIo(const std::string& what) {
  throw Error(ErrorCategory::kIo, what);
}

inline const char* CategoryName(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::kInvalidArgument:
      return "invalid-argument";
    case ErrorCategory::kDegenerateInput:
      return "degenerate-input";
    case ErrorCategory::kIo:
      return "io";
    case ErrorCategory::kConvergence:
      return "convergence";
  }
  return "unknown";
}

}  // namespace specdeblur

#endif  // SPECDEBLUR_ERRORS_HPP_
