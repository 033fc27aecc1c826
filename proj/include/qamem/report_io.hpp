// Copyright 2026 The qamem Authors
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

#pragma once

#include <filesystem>
#include <istream>
#include <string>

#include "json.hpp"
#include "qamem/query.hpp"
#include "qamem/retrieval.hpp"
#include "qamem/statevec.hpp"

namespace qamem {

using Json = nlohmann::ordered_json;

/// Amplitudes with magnitude above this are written by state_to_json.
inline constexpr double kDumpCutoff = 1e-12;

/// [{"basis": "0101", "re": ..., "im": ...}, ...] in basis-index order.
Json state_to_json(const QuantumState& state);

/// {"n", "p", "input", "mask", "f_table", "p0", "p1", "per_pattern", "source"};
/// "filled_input" is added when unknown input bits were filled.
Json report_to_json(const DistributionReport& report);
DistributionReport report_from_json(const Json& j);

Json outcome_to_json(const RetrievalOutcome& outcome);
Json recognition_to_json(const RecognitionResult& result);
Json worst_case_to_json(const WorstCaseReport& report);

const char* to_string(ReportSource source);

/// Whitespace-separated integers f(0) ... f(n).
DistanceTable parse_distance_table(std::istream& in);
DistanceTable load_distance_table(const std::filesystem::path& path);

}  // namespace qamem
