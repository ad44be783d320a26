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

#include "switchgrade/parallel.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <string>

namespace switchgrade {

int worker_threads() {
  int threads = std::max(1, omp_get_max_threads());
  if (const char* env = std::getenv("SWITCHGRADE_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap > 0) threads = std::min(threads, cap);
    } catch (const std::exception&) {
      // Unparseable values leave the OpenMP default in place.
    }
  }
  return threads;
}

}  // namespace switchgrade
