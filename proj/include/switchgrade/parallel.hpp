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

namespace switchgrade {

/// How a data-parallel kernel runs. Both paths produce bit-identical results;
/// the serial one is the reference the OpenMP one is tested against.
enum class Execution { serial, parallel };

/// Worker thread count: OpenMP's maximum, capped by SWITCHGRADE_THREADS when
/// that variable holds a positive integer.
int worker_threads();

}  // namespace switchgrade
