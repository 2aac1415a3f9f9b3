// Copyright 2026 The online-usm Authors.
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

#ifndef OUSM_ERRORS_H_
#define OUSM_ERRORS_H_

#include <stdexcept>
#include <string>

namespace ousm {

enum class ErrorKind {
  kInvalidInstance,  // malformed graph or instance description
  kInvalidSubset,    // element outside the ground set
  kInvalidPoint,     // balance point outside the triangle
  kDomain,           // argument outside a function's domain
  kSize,             // instance too large for an enumerating operation
  kConfig,           // bad configuration or descriptor
  kContract,         // caller violated an operation's precondition
  kIo,               // file system failure
};

const char* ErrorKindName(ErrorKind kind);

// All library failures are reported through this exception type. The kind
// determines the CLI exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ousm

#endif  // OUSM_ERRORS_H_
