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

#include "qamem/storage.hpp"

#include <cmath>
#include <string>

#include "qamem/errors.hpp"

namespace qamem {

namespace {

bool has_pattern_register(const QuantumState& state) { return state.layout().has("p"); }

std::size_t memory_width(const QuantumState& state) {
  const auto& layout = state.layout();
  if (!layout.has("u") || !layout.has("m") || layout.width("u") != 2) {
    throw InvalidInput("state is not a storage-circuit state (needs registers u:2 and m:n)");
  }
  return layout.width("m");
}

void check_pattern_fits(const QuantumState& state, const Pattern& pattern) {
  const std::size_t n = memory_width(state);
  if (pattern.size() != n) {
    throw InvalidInput("pattern length " + std::to_string(pattern.size()) +
                       " does not match memory register width " + std::to_string(n));
  }
  if (has_pattern_register(state) && state.layout().width("p") != n) {
    throw InvalidInput("pattern and memory registers differ in width");
  }
}

// XOR from pattern qubit j onto memory qubit j; classically conditioned when
// the pattern register is not simulated.
void xor_pattern_into_memory(QuantumState& state, const Pattern& pattern, std::size_t j) {
  const auto& layout = state.layout();
  const std::size_t m_j = layout.qubit("m", j);
  if (has_pattern_register(state)) {
    const std::size_t controls[] = {layout.qubit("p", j)};
    state.apply_multi_controlled_not(controls, m_j);
  } else if (pattern.bit(j)) {
    state.apply_1q(m_j, gate_not());
  }
}

// 2XOR_{p_j u2 m_j}
void copy_pattern_bit(QuantumState& state, const Pattern& pattern, std::size_t j) {
  const auto& layout = state.layout();
  const std::size_t u2 = layout.qubit("u", 1);
  const std::size_t m_j = layout.qubit("m", j);
  if (has_pattern_register(state)) {
    const std::size_t controls[] = {layout.qubit("p", j), u2};
    state.apply_multi_controlled_not(controls, m_j);
  } else if (pattern.bit(j)) {
    const std::size_t controls[] = {u2};
    state.apply_multi_controlled_not(controls, m_j);
  }
}

// nXOR_{m_1 ... m_n u_1}
void flag_all_ones(QuantumState& state) {
  const auto& layout = state.layout();
  const std::size_t n = layout.width("m");
  std::vector<std::size_t> controls(n);
  for (std::size_t j = 0; j < n; ++j) controls[j] = layout.qubit("m", j);
  state.apply_multi_controlled_not(controls, layout.qubit("u", 0));
}

std::uint64_t basis_for(const RegisterLayout& layout, const Pattern& pattern,
                        std::string_view u, std::string_view m) {
  if (layout.has("p")) return layout.index_of({{"p", pattern.str()}, {"u", u}, {"m", m}});
  return layout.index_of({{"u", u}, {"m", m}});
}

StoragePath resolve(StoragePath path, std::size_t n) {
  if (path != StoragePath::automatic) return path;
  return n <= kReferenceStorageMaxN ? StoragePath::reference : StoragePath::classical_pattern;
}

}  // namespace

RegisterLayout storage_layout(std::size_t n, StoragePath path, std::size_t max_qubits) {
  if (n == 0) throw InvalidInput("pattern length must be >= 1");
  switch (resolve(path, n)) {
    case StoragePath::reference:
      return RegisterLayout({{"p", n}, {"u", 2}, {"m", n}}, max_qubits);
    case StoragePath::classical_pattern:
    case StoragePath::automatic:
      break;
  }
  return RegisterLayout({{"u", 2}, {"m", n}}, max_qubits);
}

QuantumState storage_initial_state(const Pattern& first, StoragePath path,
                                   std::size_t max_qubits) {
  const std::size_t n = first.size();
  RegisterLayout layout = storage_layout(n, path, max_qubits);
  const std::uint64_t index = basis_for(layout, first, "01", std::string(n, '0'));
  return QuantumState::basis_index(std::move(layout), index);
}

void load_pattern(QuantumState& state, const Pattern& from, const Pattern& to) {
  check_pattern_fits(state, from);
  check_pattern_fits(state, to);
  if (!has_pattern_register(state)) return;
  for (std::size_t j = 0; j < from.size(); ++j) {
    if (from.bit(j) != to.bit(j)) state.apply_1q(state.layout().qubit("p", j), gate_not());
  }
}

void apply_flag(QuantumState& state, const Pattern& pattern) {
  check_pattern_fits(state, pattern);
  const Gate1Q x = gate_not();
  for (std::size_t j = 0; j < pattern.size(); ++j) {
    xor_pattern_into_memory(state, pattern, j);
    state.apply_1q(state.layout().qubit("m", j), x);
  }
  flag_all_ones(state);
}

void apply_unflag(QuantumState& state, const Pattern& pattern) {
  check_pattern_fits(state, pattern);
  flag_all_ones(state);
  const Gate1Q x = gate_not();
  for (std::size_t j = pattern.size(); j-- > 0;) {
    state.apply_1q(state.layout().qubit("m", j), x);
    xor_pattern_into_memory(state, pattern, j);
  }
}

void store_step(QuantumState& state, const Pattern& pattern, std::size_t i, std::size_t p,
                StorageTrace* trace) {
  check_pattern_fits(state, pattern);
  if (p == 0 || i == 0 || i > p) {
    throw InvalidInput("storage step " + std::to_string(i) + " outside 1.." + std::to_string(p));
  }
  const auto& layout = state.layout();
  if (has_pattern_register(state)) {
    double held = 0.0;
    const auto amps = state.amplitudes();
    const std::uint64_t want = pattern.to_index();
    const auto field = layout.field("p");
    for (std::uint64_t k = 0; k < amps.size(); ++k) {
      if (field(k) == want) held += std::norm(amps[k]);
    }
    if (std::abs(held - 1.0) > kNormTolerance) {
      throw InvalidInput("pattern register does not hold '" + pattern.str() + "'");
    }
  }
  const std::size_t n = pattern.size();

  for (std::size_t j = 0; j < n; ++j) copy_pattern_bit(state, pattern, j);
  apply_flag(state, pattern);
  state.apply_controlled_1q(layout.qubit("u", 0), layout.qubit("u", 1), gate_s(p + 1 - i));
  apply_unflag(state, pattern);

  if (trace != nullptr) {
    StorageSnapshot snap;
    snap.i = i;
    snap.processing_amplitude = state.amplitude(basis_for(layout, pattern, "01", pattern.str()));
    snap.stored_amplitude = state.amplitude(basis_for(layout, pattern, "00", pattern.str()));
    snap.stored_weight = state.branch_probability(layout.qubit("u", 1), 0);
    trace->steps.push_back(snap);
  }

  for (std::size_t j = n; j-- > 0;) copy_pattern_bit(state, pattern, j);
}

QuantumState store(const PatternSet& set, const StoreOptions& options) {
  const std::size_t n = set.n();
  const std::size_t p = set.p();
  QuantumState state = storage_initial_state(set[0], resolve(options.path, n), options.max_qubits);
  for (std::size_t i = 1; i <= p; ++i) {
    if (i > 1) load_pattern(state, set[i - 2], set[i - 1]);
    store_step(state, set[i - 1], i, p, options.trace);
  }
  state.check_normalized();

  // The circuit leaves |p^p> (x) |00> (x) |M>; read |M> off that slice.
  const auto& layout = state.layout();
  const std::uint64_t base = basis_for(layout, set[p - 1], "00", std::string(n, '0'));
  const std::uint64_t dim = std::uint64_t{1} << n;
  std::vector<Amplitude> memory(dim);
  double kept = 0.0;
  for (std::uint64_t v = 0; v < dim; ++v) {
    memory[v] = state.amplitude(base + v);
    kept += std::norm(memory[v]);
  }
  if (std::abs(1.0 - kept) > kNormTolerance) {
    throw NumericalError("storage left weight " + std::to_string(1.0 - kept) +
                         " outside the |00> utility branch");
  }
  return QuantumState::from_amplitudes(RegisterLayout({{"m", n}}, options.max_qubits),
                                       std::move(memory));
}

double verify_memory(const QuantumState& state, const PatternSet& set) {
  const auto& regs = state.layout().registers();
  if (regs.size() != 1 || regs.front().width != set.n()) {
    throw InvalidInput("verify_memory needs a single register of width " +
                       std::to_string(set.n()));
  }
  const double expected = 1.0 / std::sqrt(static_cast<double>(set.p()));
  std::vector<Amplitude> want(state.amplitudes().size());
  for (const auto& pat : set.patterns()) want[pat.to_index()] = expected;
  double worst = 0.0;
  for (std::size_t k = 0; k < want.size(); ++k) {
    worst = std::max(worst, std::abs(state.amplitudes()[k] - want[k]));
  }
  return worst;
}

}  // namespace qamem
