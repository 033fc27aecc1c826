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
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qamem/pattern.hpp"
#include "qamem/query.hpp"
#include "qamem/rng.hpp"
#include "qamem/statevec.hpp"
#include "qamem/storage.hpp"

namespace qamem {

enum class RetrievalPath {
  /// The input register is a classical basis state; only m and c are
  /// simulated and XORs from it become conditioned NOTs.
  classical_input,
  /// Input register i, memory m and control c are all simulated.
  reference,
};

/// Largest n accepted by RetrievalPath::reference.
inline constexpr std::size_t kReferenceRetrievalMaxN = 6;

enum class PhaseMethod {
  /// U on each supported memory qubit followed by CU^-2 from the control.
  /// Falls back to the diagonal operator when the query carries a distance table.
  automatic,
  diagonal,
};

struct RetrievalOptions {
  RetrievalPath path = RetrievalPath::classical_input;
  PhaseMethod phase = PhaseMethod::automatic;
  StoragePath storage = StoragePath::automatic;
  std::size_t max_qubits = kDefaultMaxQubits;
};

/// Phase kick applied after the comparison step: every basis state picks up
/// exp(+-i pi f(d) / (2 denominator)), with d the number of zeros on the
/// supported memory qubits and the sign set by the control qubit (+ for c = 0).
struct PhaseSpec {
  std::vector<std::size_t> support;
  std::size_t denominator = 1;
  std::optional<DistanceTable> f_table;
};

PhaseSpec phase_spec(const Query& query);

/// Memory-register positions that contribute to the distance: the known
/// positions under a mask, all positions otherwise. Throws InvalidInput for a
/// mask with no known bits.
std::vector<std::size_t> masked_phase_support(const Query& query);

/// (m:n, c:1) or (i:n, m:n, c:1).
RegisterLayout retrieval_layout(std::size_t n, RetrievalPath path,
                                std::size_t max_qubits = kDefaultMaxQubits);

/// Memory from the storage circuit, control in (|0> + |1>)/sqrt 2, and the
/// input register (reference path) holding the input.
QuantumState prepare_retrieval_state(const PatternSet& set, const Query& query,
                                     const RetrievalOptions& options = {});

/// Per memory qubit: XOR from the input bit, then NOT. Afterwards m_k = 1 iff
/// input and stored bit agree.
void apply_compare(QuantumState& state, const Pattern& input);
/// Exact inverse of apply_compare (restores the stored pattern).
void apply_uncompare(QuantumState& state, const Pattern& input);

/// The U / CU^-2 gate sequence. Requires spec.f_table to be empty.
void apply_phase_decomposed(QuantumState& state, const PhaseSpec& spec);
/// The same kick as a diagonal operator, evaluated per basis state.
void phase_operator_direct(QuantumState& state, const PhaseSpec& spec);

void apply_output_hadamard(QuantumState& state);

/// Full deterministic part of retrieval: prepare, compare, phase, uncompare,
/// Hadamard on the control.
QuantumState run_circuit(const PatternSet& set, const Query& query,
                         const RetrievalOptions& options = {});

/// Reads p0, p1 and the conditional pattern distribution off a run_circuit state.
DistributionReport report_from_state(const QuantumState& state, const PatternSet& set,
                                     const Query& query);

DistributionReport gate_level_report(const PatternSet& set, const Query& query,
                                     const RetrievalOptions& options = {});

/// (P(c = 0), P(c = 1)) from the gate-level state.
std::pair<double, double> control_probabilities(const PatternSet& set, const Query& query,
                                                const RetrievalOptions& options = {});

struct RetrievalOutcome {
  int control_bit = 1;
  /// Present iff control_bit == 0.
  std::optional<Pattern> retrieved;
  std::size_t trial_index = 0;
};

struct RecognitionResult {
  bool recognized = false;
  std::size_t trials_used = 0;
  std::optional<RetrievalOutcome> outcome;
};

/// One postselected trial on a freshly prepared memory.
RetrievalOutcome retrieve_once(const PatternSet& set, const Query& query, Rng& rng,
                               const RetrievalOptions& options = {}, std::size_t trial_index = 1);

/// Repeats retrieve_once until the control reads 0 or `threshold` trials have failed.
RecognitionResult recognize(const PatternSet& set, const Query& query, std::size_t threshold,
                            Rng& rng, const RetrievalOptions& options = {});

/// P(c = 0) with the input set to each stored pattern in turn, in set order.
std::vector<double> self_recognition_probabilities(const PatternSet& set);

/// Nearest integer (half up) to 1 / min self-recognition probability, at least 1.
std::size_t choose_threshold(const PatternSet& set);

/// round-half-up(1 / probability), floored at 1.
std::size_t threshold_for(double probability);

struct WorstCaseReport {
  std::size_t n = 0;
  std::size_t x = 0;
  std::size_t p = 0;
  double p0_exact = 0.0;
  std::optional<double> p0_gate_level;
  std::size_t threshold = 0;
  /// 1/p + pi^2 / (4 n^2), the large-n estimate of p0 for this scenario.
  double asymptotic_bound = 0.0;
  bool bound_holds = false;
};

/// Recognition probability of the isolated pattern in the worst-case cluster
/// scenario and the threshold it calls for. With `gate_level` set the
/// probability is also measured on the simulated circuit.
WorstCaseReport worst_case_threshold_scaling(std::size_t n, std::size_t x,
                                             bool gate_level = false);

/// Empirical outcome counts of independent retrieve_once trials.
struct ExperimentCounts {
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::size_t control_zero = 0;
  /// Keyed by every stored pattern.
  std::map<std::string, std::size_t> retrieved;
};

/// Trial t uses Rng::stream(seed, t); workers merge by trial index, so the
/// counts do not depend on `workers`. workers = 0 picks the hardware count.
ExperimentCounts run_experiment(const PatternSet& set, const Query& query, std::size_t trials,
                                std::uint64_t seed, const RetrievalOptions& options = {},
                                std::size_t workers = 0);

}  // namespace qamem
