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

// Structural certificates for switching systems.
#pragma once

#include <optional>
#include <vector>

#include "switchgrade/matexp.hpp"
#include "switchgrade/system.hpp"

namespace switchgrade {

/// Largest real part among the eigenvalues of A.
double spectral_abscissa(const Mat& a);

bool is_hurwitz(const Mat& a, double tol = 1e-10);

/// Dimension of the linear span of all finite nonempty products of the
/// generators. Rank decisions drop singular values below cutoff * sigma_max.
int algebra_closure_rank(const SwitchingSystem& sys, double cutoff = 1e-9);

/// Closes kernel vectors of singular elements of the generated algebra under
/// the generators (and likewise for the transposes) looking for a proper
/// nontrivial subspace every generator preserves. Returns an orthonormal
/// basis of the first one found.
std::optional<std::vector<Vec>> find_invariant_subspace(const SwitchingSystem& sys);

/// Dimension 2: exact common-eigenvector test. Higher dimensions: full
/// algebra rank certifies irreducibility; otherwise an exhibited invariant
/// subspace certifies reducibility, and Errc::inconclusive is raised when
/// neither certificate is found.
bool is_irreducible(const SwitchingSystem& sys);

}  // namespace switchgrade
