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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace switchgrade {

enum class Errc {
  invalid_input,
  dimension,
  overflow,
  accuracy,
  range,
  inconclusive,
  method_inapplicable,
  lambda_inconsistency,
  configuration,
  parse,
  io,
};

std::string_view to_string(Errc code);

/// Exception type for every recoverable failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

}  // namespace switchgrade
