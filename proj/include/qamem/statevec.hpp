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

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qamem/rng.hpp"

namespace qamem {

using Amplitude = std::complex<double>;

inline constexpr std::size_t kDefaultMaxQubits = 24;
/// Allowed drift of the squared norm away from 1 at API boundaries.
inline constexpr double kNormTolerance = 1e-9;
/// Allowed deviation of U^dagger U from the identity for a Gate1Q.
inline constexpr double kUnitaryTolerance = 1e-12;

struct Register {
  std::string name;
  std::size_t width = 0;
};

/// Named, ordered qubit registers.
///
/// Global qubit indices run over the registers in order: register r starts at
/// the sum of the widths before it, and position 0 of a register is the
/// leftmost character of the bit string it holds. Global qubit 0 is the most
/// significant bit of a basis index.
class RegisterLayout {
 public:
  explicit RegisterLayout(std::vector<Register> registers,
                          std::size_t max_qubits = kDefaultMaxQubits);

  const std::vector<Register>& registers() const { return registers_; }
  std::size_t total_qubits() const { return total_qubits_; }
  std::size_t max_qubits() const { return max_qubits_; }
  std::uint64_t dimension() const { return std::uint64_t{1} << total_qubits_; }

  bool has(std::string_view name) const;
  std::size_t offset(std::string_view name) const;
  std::size_t width(std::string_view name) const;
  /// Global index of `position` within register `name`.
  std::size_t qubit(std::string_view name, std::size_t position) const;

  /// Basis-index bit for a global qubit.
  std::uint64_t qubit_mask(std::size_t qubit) const {
    return std::uint64_t{1} << (total_qubits_ - 1 - qubit);
  }
  bool qubit_value(std::uint64_t index, std::size_t qubit) const {
    return (index & qubit_mask(qubit)) != 0;
  }

  /// Shift and mask extracting one register's value from a basis index.
  struct Field {
    std::size_t shift = 0;
    std::uint64_t mask = 0;
    std::uint64_t operator()(std::uint64_t index) const { return (index >> shift) & mask; }
  };
  Field field(std::string_view name) const;

  /// Value of register `name` inside basis index `index` (position 0 is the MSB).
  std::uint64_t register_value(std::uint64_t index, std::string_view name) const {
    return field(name)(index);
  }
  std::string register_bits(std::uint64_t index, std::string_view name) const;

  /// Basis index with the listed registers set to the given bit strings and all
  /// other registers zero.
  std::uint64_t index_of(
      std::initializer_list<std::pair<std::string_view, std::string_view>> values) const;

  /// Layout of this register list followed by `other`'s.
  RegisterLayout concat(const RegisterLayout& other) const;

  bool operator==(const RegisterLayout& other) const;

 private:
  const Register& find(std::string_view name) const;

  std::vector<Register> registers_;
  std::vector<std::size_t> offsets_;
  std::size_t total_qubits_ = 0;
  std::size_t max_qubits_ = kDefaultMaxQubits;
};

/// Unitary 2x2 matrix, row-major.
class Gate1Q {
 public:
  using Matrix = std::array<Amplitude, 4>;

  /// Throws InvalidInput if `m` is not unitary within kUnitaryTolerance.
  explicit Gate1Q(const Matrix& m);

  Amplitude operator()(std::size_t row, std::size_t col) const { return m_[2 * row + col]; }
  const Matrix& matrix() const { return m_; }

  Gate1Q adjoint() const;
  Gate1Q operator*(const Gate1Q& rhs) const;

  /// max |(U^dagger U - I)_{rc}|
  double unitarity_error() const;

 private:
  Matrix m_;
};

Gate1Q gate_hadamard();
Gate1Q gate_not();
/// Rotation block of the storage split gate: [[sqrt((i-1)/i), 1/sqrt(i)], [-1/sqrt(i), sqrt((i-1)/i)]].
Gate1Q gate_s(std::size_t i);
/// diag(exp(i*pi/(2n)), 1).
Gate1Q gate_u(std::size_t n);

/// Dense state vector over a RegisterLayout.
///
/// Mutating gate calls are in place; the state owns its amplitudes and is
/// copyable. Normalization is checked, never re-imposed: operations that
/// require a normalized state throw NumericalError when the squared norm has
/// drifted from 1 by more than kNormTolerance.
class QuantumState {
 public:
  /// Basis state named by a bit string over all qubits (global qubit 0 first).
  static QuantumState basis(RegisterLayout layout, std::string_view bits);
  static QuantumState basis_index(RegisterLayout layout, std::uint64_t index);
  static QuantumState from_amplitudes(RegisterLayout layout, std::vector<Amplitude> amplitudes);

  const RegisterLayout& layout() const { return layout_; }
  std::size_t num_qubits() const { return layout_.total_qubits(); }
  std::span<const Amplitude> amplitudes() const { return amplitudes_; }
  /// Raw access for diagonal operators; callers keep the state unitary.
  std::span<Amplitude> mutable_amplitudes() { return amplitudes_; }
  Amplitude amplitude(std::uint64_t index) const { return amplitudes_.at(index); }

  double norm_squared() const;
  void check_normalized(double tolerance = kNormTolerance) const;

  void apply_1q(std::size_t qubit, const Gate1Q& g);
  void apply_controlled_1q(std::size_t control, std::size_t target, const Gate1Q& g);
  /// NOT on `target` where every control qubit is 1 (XOR, Toffoli, nXOR).
  void apply_multi_controlled_not(std::span<const std::size_t> controls, std::size_t target);

  /// Exact weight of the subspace where `qubit` equals `bit`.
  double branch_probability(std::size_t qubit, int bit) const;

  /// Projective Z measurement; collapses and renormalizes in place.
  int measure_qubit(std::size_t qubit, Rng& rng);
  /// Measures every qubit of a register at once; returns its bit string.
  std::string measure_register(std::string_view name, Rng& rng);

  /// Marginal distribution of one register. Only outcomes with nonzero weight are listed.
  std::map<std::string, double> register_distribution(std::string_view name) const;

  /// |this> (x) |other>, layouts concatenated.
  QuantumState tensor(const QuantumState& other) const;

 private:
  QuantumState(RegisterLayout layout, std::vector<Amplitude> amplitudes);

  void check_qubit(std::size_t qubit) const;

  RegisterLayout layout_;
  std::vector<Amplitude> amplitudes_;
};

/// Calls fn(index) for every basis index whose bits under `fixed_mask` equal
/// `fixed_value`, in increasing order. `space_mask` covers all valid bits.
template <typename Fn>
inline void for_each_index_with(std::uint64_t space_mask, std::uint64_t fixed_mask,
                                std::uint64_t fixed_value, Fn&& fn) {
  const std::uint64_t free_mask = space_mask & ~fixed_mask;
  std::uint64_t sub = 0;
  do {
    fn(sub | fixed_value);
    sub = (sub - free_mask) & free_mask;
  } while (sub != 0);
}

}  // namespace qamem
