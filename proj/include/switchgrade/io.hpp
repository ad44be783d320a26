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

// Text formats: trajectory CSV, JSON reports, schedule files, polar tables.
#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "json.hpp"
#include "switchgrade/barabanov.hpp"
#include "switchgrade/system.hpp"

namespace switchgrade {

using Json = nlohmann::ordered_json;

/// 17 significant digits, enough to round-trip every finite double.
std::string format_number(double x);

/// Serializes with every number printed by format_number; non-finite numbers
/// become null.
std::string dump_json(const Json& value, int indent = 2);

/// Columns t, x1..xd; '.' decimal separator, '\n' line ends.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

void write_text_file(const std::string& path, std::string_view content);
std::string read_text_file(const std::string& path);

/// JSON array of {"duration": d, "weights": [w_1, ..., w_n]}. Weights must
/// sum to 1 and be nonnegative within 1e-9; they are then projected onto the
/// simplex exactly. Errors carry the 1-based line of the offending element.
Schedule parse_schedule(std::string_view text, std::size_t generators);

Json polar_table_to_json(const PolarTable& table);
PolarTable polar_table_from_json(const Json& j);

}  // namespace switchgrade
