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

#include "ousm/errors.h"

namespace ousm {

const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInstance:
      return "invalid instance";
    case ErrorKind::kInvalidSubset:
      return "invalid subset";
    case ErrorKind::kInvalidPoint:
      return "invalid point";
    case ErrorKind::kDomain:
      return "domain error";
    case ErrorKind::kSize:
      return "size error";
    case ErrorKind::kConfig:
      return "config error";
    case ErrorKind::kContract:
      return "contract error";
    case ErrorKind::kIo:
      return "I/O error";
  }
  return "error";
}

}  // namespace ousm
