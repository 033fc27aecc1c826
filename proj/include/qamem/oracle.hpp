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

#include <cstddef>
#include <optional>
#include <vector>

#include "qamem/pattern.hpp"
#include "qamem/query.hpp"
#include "qamem/statevec.hpp"

/// Closed-form reference values for storage and retrieval. Nothing here runs
/// a circuit; distances and amplitudes are evaluated directly from the
/// pattern strings so that agreement with the simulator is a real check.
namespace qamem::oracle {

/// Number of positions where a and b differ. Throws InvalidInput on a length mismatch.
std::size_t hamming(const Pattern& a, const Pattern& b);

/// Distance used for the phase: differing known positions, remapped through
/// the query's distance table when it has one.
std::size_t effective_distance(const Query& query, const Pattern& stored);

/// p0 = (1/p) sum_k cos^2(pi theta_k / 2D), per_pattern[k] = cos^2(...) / (p p0).
DistributionReport analytic_report(const PatternSet& set, const Query& query);

/// 1/sqrt(p) at every stored pattern's index, 0 elsewhere.
std::vector<Amplitude> expected_memory(const PatternSet& set);

struct WorstCaseScenario {
  std::size_t n = 0;
  std::size_t x = 0;
  Pattern isolated;
  PatternSet set;
};

/// `isolated` plus every pattern at distance n, n-1, ..., n-x from it, grouped
/// by decreasing distance and ascending within a group. Requires 1 <= x < n <= 24.
WorstCaseScenario worst_case_set(std::size_t n, std::size_t x,
                                 std::optional<Pattern> isolated = std::nullopt);

/// 1 + sum_{k=0}^{x} C(n, k)
std::size_t worst_case_size(std::size_t n, std::size_t x);

/// Final retrieval state written out from its closed form: cos(phi_k)/sqrt(p)
/// on |p^k, c=0> and i sin(phi_k)/sqrt(p) on |p^k, c=1>, over the layout of
/// `circuit_state` ((m, c) or (i, m, c)). Returns the largest elementwise
/// deviation from `circuit_state`. Requires n <= 8.
double brute_force_measurement_check(const PatternSet& set, const Query& query,
                                     const QuantumState& circuit_state);

}  // namespace qamem::oracle
