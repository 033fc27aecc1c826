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
#include <vector>

#include "qamem/pattern.hpp"
#include "qamem/statevec.hpp"

namespace qamem {

/// How the pattern register is represented while storing.
enum class StoragePath {
  /// Reference for n <= kReferenceStorageMaxN, classical pattern register above.
  automatic,
  /// All 2n+2 qubits (pattern p, utility u, memory m) are simulated.
  reference,
  /// The pattern register is always a basis state, so only u and m are
  /// simulated and gates controlled on it become classically conditioned.
  classical_pattern,
};

inline constexpr std::size_t kReferenceStorageMaxN = 8;

/// State after one storage iteration, before the memory register is cleared.
struct StorageSnapshot {
  std::size_t i = 0;
  /// Amplitude of |p^i; 01; p^i>, expected sqrt((p-i)/p).
  Amplitude processing_amplitude;
  /// Amplitude of the freshly split |p^i; 00; p^i>, expected 1/sqrt(p).
  Amplitude stored_amplitude;
  /// Total weight of the u2 = 0 branch, expected i/p.
  double stored_weight = 0.0;
};

struct StorageTrace {
  std::vector<StorageSnapshot> steps;
};

struct StoreOptions {
  StoragePath path = StoragePath::automatic;
  std::size_t max_qubits = kDefaultMaxQubits;
  /// Filled with one snapshot per pattern when non-null.
  StorageTrace* trace = nullptr;
};

/// Layout used by the storage circuit: (p:n, u:2, m:n) or (u:2, m:n).
RegisterLayout storage_layout(std::size_t n, StoragePath path,
                              std::size_t max_qubits = kDefaultMaxQubits);

/// |p^1; 01; 0...0> (or |01; 0...0> for the classical path).
QuantumState storage_initial_state(const Pattern& first, StoragePath path,
                                   std::size_t max_qubits = kDefaultMaxQubits);

/// Rewrites the pattern register from `from` to `to` with NOT gates. No-op
/// on the classical path.
void load_pattern(QuantumState& state, const Pattern& from, const Pattern& to);

/// Marks the processing term: XOR/NOT comparison of memory against the pattern,
/// then an n-controlled NOT onto u1.
void apply_flag(QuantumState& state, const Pattern& pattern);
/// Exact inverse of apply_flag.
void apply_unflag(QuantumState& state, const Pattern& pattern);

/// One storage iteration for the i-th of p patterns (1-based): copy, flag,
/// split with CS^{p+1-i}, unflag, clear the memory register of the
/// processing term. The pattern register must already hold `pattern`.
void store_step(QuantumState& state, const Pattern& pattern, std::size_t i, std::size_t p,
                StorageTrace* trace = nullptr);

/// Runs the full storage circuit and returns |M> = (1/sqrt p) sum_k |p^k> on
/// a single register "m" of n qubits.
QuantumState store(const PatternSet& set, const StoreOptions& options = {});

/// max over basis states of |amp(state) - 1/sqrt(p) [index is a stored pattern]|.
/// `state` must consist of one n-qubit register.
double verify_memory(const QuantumState& state, const PatternSet& set);

}  // namespace qamem
