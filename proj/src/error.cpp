// Copyright 2026 The switchgrade Authors
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

#include "switchgrade/error.hpp"

namespace switchgrade {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::invalid_input: return "invalid-input";
    case Errc::dimension: return "dimension";
    case Errc::overflow: return "overflow";
    case Errc::accuracy: return "accuracy";
    case Errc::range: return "range";
    case Errc::inconclusive: return "inconclusive";
    case Errc::method_inapplicable: return "method-inapplicable";
    case Errc::lambda_inconsistency: return "lambda-inconsistency";
    case Errc::configuration: return "configuration";
    case Errc::parse: return "parse";
    case Errc::io: return "io";
  }
  return "unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace switchgrade
