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

#include "qamem/statevec.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "qamem/errors.hpp"

namespace qamem {

namespace {

std::string describe_norm(double norm2) {
  std::ostringstream os;
  os.precision(17);
  os << "state norm^2 = " << norm2 << " drifted from 1 beyond " << kNormTolerance;
  return os.str();
}

// std::complex operator* goes through __muldc3 for C99 inf/nan recovery,
// which amplitudes never need.
inline Amplitude cmul(Amplitude a, Amplitude b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

inline bool is_exact_not(const Gate1Q::Matrix& m) {
  return m[0] == Amplitude{} && m[3] == Amplitude{} && m[1] == Amplitude{1.0} &&
         m[2] == Amplitude{1.0};
}

}  // namespace

// ---------------------------------------------------------------------------
// RegisterLayout

RegisterLayout::RegisterLayout(std::vector<Register> registers, std::size_t max_qubits)
    : registers_(std::move(registers)), max_qubits_(max_qubits) {
  if (registers_.empty()) {
    throw InvalidInput("register layout needs at least one register");
  }
  if (max_qubits_ == 0 || max_qubits_ > 62) {
    throw InvalidInput("max qubits must be in 1..62");
  }
  std::set<std::string> names;
  for (const auto& r : registers_) {
    if (r.name.empty()) throw InvalidInput("register name must not be empty");
    if (r.width == 0) throw InvalidInput("register '" + r.name + "' has width 0");
    if (!names.insert(r.name).second) {
      throw InvalidInput("duplicate register name '" + r.name + "'");
    }
    offsets_.push_back(total_qubits_);
    total_qubits_ += r.width;
  }
  if (total_qubits_ > max_qubits_) {
    throw InvalidInput("layout needs " + std::to_string(total_qubits_) +
                       " qubits, above the configured maximum of " + std::to_string(max_qubits_));
  }
}

const Register& RegisterLayout::find(std::string_view name) const {
  for (const auto& r : registers_) {
    if (r.name == name) return r;
  }
  throw InvalidInput("unknown register '" + std::string(name) + "'");
}

bool RegisterLayout::has(std::string_view name) const {
  return std::any_of(registers_.begin(), registers_.end(),
                     [&](const Register& r) { return r.name == name; });
}

std::size_t RegisterLayout::offset(std::string_view name) const {
  for (std::size_t k = 0; k < registers_.size(); ++k) {
    if (registers_[k].name == name) return offsets_[k];
  }
  throw InvalidInput("unknown register '" + std::string(name) + "'");
}

std::size_t RegisterLayout::width(std::string_view name) const { return find(name).width; }

std::size_t RegisterLayout::qubit(std::string_view name, std::size_t position) const {
  const auto& r = find(name);
  if (position >= r.width) {
    throw InvalidInput("position " + std::to_string(position) + " outside register '" +
                       r.name + "' of width " + std::to_string(r.width));
  }
  return offset(name) + position;
}

RegisterLayout::Field RegisterLayout::field(std::string_view name) const {
  const std::size_t w = width(name);
  return Field{total_qubits_ - offset(name) - w, (std::uint64_t{1} << w) - 1};
}

std::string RegisterLayout::register_bits(std::uint64_t index, std::string_view name) const {
  const std::size_t w = width(name);
  const std::uint64_t v = register_value(index, name);
  std::string bits(w, '0');
  for (std::size_t k = 0; k < w; ++k) {
    if ((v >> (w - 1 - k)) & 1U) bits[k] = '1';
  }
  return bits;
}

std::uint64_t RegisterLayout::index_of(
    std::initializer_list<std::pair<std::string_view, std::string_view>> values) const {
  std::uint64_t index = 0;
  for (const auto& [name, bits] : values) {
    const std::size_t w = width(name);
    if (bits.size() != w) {
      throw InvalidInput("bit string for register '" + std::string(name) + "' has length " +
                         std::to_string(bits.size()) + ", expected " + std::to_string(w));
    }
    const std::size_t base = offset(name);
    for (std::size_t k = 0; k < w; ++k) {
      if (bits[k] == '1') {
        index |= qubit_mask(base + k);
      } else if (bits[k] != '0') {
        throw InvalidInput("bit strings may only contain '0' and '1'");
      }
    }
  }
  return index;
}

RegisterLayout RegisterLayout::concat(const RegisterLayout& other) const {
  std::vector<Register> all = registers_;
  all.insert(all.end(), other.registers_.begin(), other.registers_.end());
  return RegisterLayout(std::move(all), std::max(max_qubits_, other.max_qubits_));
}

bool RegisterLayout::operator==(const RegisterLayout& other) const {
  if (registers_.size() != other.registers_.size()) return false;
  for (std::size_t k = 0; k < registers_.size(); ++k) {
    if (registers_[k].name != other.registers_[k].name ||
        registers_[k].width != other.registers_[k].width) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Gate1Q

Gate1Q::Gate1Q(const Matrix& m) : m_(m) {
  const double err = unitarity_error();
  if (!(err <= kUnitaryTolerance)) {
    throw InvalidInput("gate matrix is not unitary (error " + std::to_string(err) + ")");
  }
}

double Gate1Q::unitarity_error() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 2; ++c) {
      Amplitude acc = std::conj(m_[r]) * m_[c] + std::conj(m_[2 + r]) * m_[2 + c];
      if (r == c) acc -= 1.0;
      worst = std::max(worst, std::abs(acc));
    }
  }
  return worst;
}

Gate1Q Gate1Q::adjoint() const {
  return Gate1Q({std::conj(m_[0]), std::conj(m_[2]), std::conj(m_[1]), std::conj(m_[3])});
}

Gate1Q Gate1Q::operator*(const Gate1Q& rhs) const {
  const auto& a = m_;
  const auto& b = rhs.m_;
  return Gate1Q({a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
                 a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]});
}

Gate1Q gate_hadamard() {
  const double h = 1.0 / std::numbers::sqrt2;
  return Gate1Q({h, h, h, -h});
}

Gate1Q gate_not() { return Gate1Q({0.0, 1.0, 1.0, 0.0}); }

Gate1Q gate_s(std::size_t i) {
  if (i == 0) throw InvalidInput("S gate index must be >= 1");
  const double id = static_cast<double>(i);
  const double diag = std::sqrt((id - 1.0) / id);
  const double off = 1.0 / std::sqrt(id);
  return Gate1Q({diag, off, -off, diag});
}

Gate1Q gate_u(std::size_t n) {
  if (n == 0) throw InvalidInput("U gate needs n >= 1");
  const double angle = std::numbers::pi / (2.0 * static_cast<double>(n));
  return Gate1Q({std::polar(1.0, angle), 0.0, 0.0, 1.0});
}

// ---------------------------------------------------------------------------
// QuantumState

QuantumState::QuantumState(RegisterLayout layout, std::vector<Amplitude> amplitudes)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {}

QuantumState QuantumState::basis(RegisterLayout layout, std::string_view bits) {
  if (bits.size() != layout.total_qubits()) {
    throw InvalidInput("basis bit string has length " + std::to_string(bits.size()) +
                       ", layout has " + std::to_string(layout.total_qubits()) + " qubits");
  }
  std::uint64_t index = 0;
  for (std::size_t q = 0; q < bits.size(); ++q) {
    if (bits[q] == '1') {
      index |= layout.qubit_mask(q);
    } else if (bits[q] != '0') {
      throw InvalidInput("bit strings may only contain '0' and '1'");
    }
  }
  return basis_index(std::move(layout), index);
}

QuantumState QuantumState::basis_index(RegisterLayout layout, std::uint64_t index) {
  if (index >= layout.dimension()) throw InvalidInput("basis index out of range");
  std::vector<Amplitude> amps(layout.dimension());
  amps[index] = 1.0;
  return QuantumState(std::move(layout), std::move(amps));
}

QuantumState QuantumState::from_amplitudes(RegisterLayout layout,
                                           std::vector<Amplitude> amplitudes) {
  if (amplitudes.size() != layout.dimension()) {
    throw InvalidInput("amplitude vector has length " + std::to_string(amplitudes.size()) +
                       ", layout dimension is " + std::to_string(layout.dimension()));
  }
  QuantumState s(std::move(layout), std::move(amplitudes));
  s.check_normalized();
  return s;
}

double QuantumState::norm_squared() const {
  double acc = 0.0;
  for (const auto& a : amplitudes_) acc += std::norm(a);
  return acc;
}

void QuantumState::check_normalized(double tolerance) const {
  const double n2 = norm_squared();
  if (!(std::abs(n2 - 1.0) <= tolerance)) throw NumericalError(describe_norm(n2));
}

void QuantumState::check_qubit(std::size_t qubit) const {
  if (qubit >= layout_.total_qubits()) {
    throw InvalidInput("qubit index " + std::to_string(qubit) + " out of range for " +
                       std::to_string(layout_.total_qubits()) + " qubits");
  }
}

void QuantumState::apply_1q(std::size_t qubit, const Gate1Q& g) {
  check_qubit(qubit);
  const std::uint64_t dim = layout_.dimension();
  const std::uint64_t t = layout_.qubit_mask(qubit);
  const auto m = g.matrix();
  Amplitude* amps = amplitudes_.data();
  if (is_exact_not(m)) {
    for (std::uint64_t block = 0; block < dim; block += 2 * t) {
      std::swap_ranges(amps + block, amps + block + t, amps + block + t);
    }
    return;
  }
  for (std::uint64_t block = 0; block < dim; block += 2 * t) {
    for (std::uint64_t i0 = block; i0 < block + t; ++i0) {
      const Amplitude a0 = amps[i0];
      const Amplitude a1 = amps[i0 + t];
      amps[i0] = cmul(m[0], a0) + cmul(m[1], a1);
      amps[i0 + t] = cmul(m[2], a0) + cmul(m[3], a1);
    }
  }
}

void QuantumState::apply_controlled_1q(std::size_t control, std::size_t target, const Gate1Q& g) {
  check_qubit(control);
  check_qubit(target);
  if (control == target) throw InvalidInput("control and target must differ");
  const std::uint64_t space = layout_.dimension() - 1;
  const std::uint64_t c = layout_.qubit_mask(control);
  const std::uint64_t t = layout_.qubit_mask(target);
  const auto m = g.matrix();
  for_each_index_with(space, c | t, c, [&](std::uint64_t i0) {
    const std::uint64_t i1 = i0 | t;
    const Amplitude a0 = amplitudes_[i0];
    const Amplitude a1 = amplitudes_[i1];
    amplitudes_[i0] = cmul(m[0], a0) + cmul(m[1], a1);
    amplitudes_[i1] = cmul(m[2], a0) + cmul(m[3], a1);
  });
}

void QuantumState::apply_multi_controlled_not(std::span<const std::size_t> controls,
                                              std::size_t target) {
  if (controls.empty()) throw InvalidInput("multi-controlled NOT needs at least one control");
  check_qubit(target);
  std::uint64_t cmask = 0;
  for (std::size_t c : controls) {
    check_qubit(c);
    if (c == target) throw InvalidInput("control qubit equals the target");
    const std::uint64_t bit = layout_.qubit_mask(c);
    if (cmask & bit) throw InvalidInput("duplicate control qubit");
    cmask |= bit;
  }
  const std::uint64_t space = layout_.dimension() - 1;
  const std::uint64_t t = layout_.qubit_mask(target);
  for_each_index_with(space, cmask | t, cmask,
                      [&](std::uint64_t i0) { std::swap(amplitudes_[i0], amplitudes_[i0 | t]); });
}

double QuantumState::branch_probability(std::size_t qubit, int bit) const {
  check_qubit(qubit);
  if (bit != 0 && bit != 1) throw InvalidInput("bit must be 0 or 1");
  const std::uint64_t t = layout_.qubit_mask(qubit);
  double acc = 0.0;
  for_each_index_with(layout_.dimension() - 1, t, bit ? t : 0,
                      [&](std::uint64_t i) { acc += std::norm(amplitudes_[i]); });
  return acc;
}

int QuantumState::measure_qubit(std::size_t qubit, Rng& rng) {
  check_qubit(qubit);
  check_normalized();
  const double p0 = branch_probability(qubit, 0);
  const double p1 = branch_probability(qubit, 1);
  if (p0 < 1e-12 && p1 < 1e-12) throw NumericalError("degenerate measurement: both branches empty");
  const int outcome = rng.uniform() * (p0 + p1) < p0 ? 0 : 1;
  const double keep = outcome == 0 ? p0 : p1;
  const double scale = 1.0 / std::sqrt(keep);
  const std::uint64_t t = layout_.qubit_mask(qubit);
  for (std::uint64_t i = 0; i < amplitudes_.size(); ++i) {
    const bool one = (i & t) != 0;
    if (one == (outcome == 1)) {
      amplitudes_[i] *= scale;
    } else {
      amplitudes_[i] = 0.0;
    }
  }
  return outcome;
}

std::string QuantumState::measure_register(std::string_view name, Rng& rng) {
  check_normalized();
  const std::size_t w = layout_.width(name);
  const auto field = layout_.field(name);
  std::vector<double> weights(std::size_t{1} << w, 0.0);
  for (std::uint64_t i = 0; i < amplitudes_.size(); ++i) {
    weights[field(i)] += std::norm(amplitudes_[i]);
  }
  double total = 0.0;
  for (double x : weights) total += x;
  const double draw = rng.uniform() * total;
  std::uint64_t chosen = weights.size();
  double cumulative = 0.0;
  for (std::uint64_t v = 0; v < weights.size(); ++v) {
    if (weights[v] <= 0.0) continue;
    cumulative += weights[v];
    chosen = v;
    if (draw < cumulative) break;
  }
  if (chosen == weights.size()) throw NumericalError("degenerate register measurement");
  const double scale = 1.0 / std::sqrt(weights[chosen]);
  for (std::uint64_t i = 0; i < amplitudes_.size(); ++i) {
    if (field(i) == chosen) {
      amplitudes_[i] *= scale;
    } else {
      amplitudes_[i] = 0.0;
    }
  }
  std::string bits(w, '0');
  for (std::size_t k = 0; k < w; ++k) {
    if ((chosen >> (w - 1 - k)) & 1U) bits[k] = '1';
  }
  return bits;
}

std::map<std::string, double> QuantumState::register_distribution(std::string_view name) const {
  check_normalized();
  const std::size_t w = layout_.width(name);
  const auto field = layout_.field(name);
  std::vector<double> weights(std::size_t{1} << w, 0.0);
  for (std::uint64_t i = 0; i < amplitudes_.size(); ++i) {
    weights[field(i)] += std::norm(amplitudes_[i]);
  }
  std::map<std::string, double> out;
  for (std::uint64_t v = 0; v < weights.size(); ++v) {
    if (weights[v] <= 0.0) continue;
    std::string bits(w, '0');
    for (std::size_t k = 0; k < w; ++k) {
      if ((v >> (w - 1 - k)) & 1U) bits[k] = '1';
    }
    out.emplace(std::move(bits), weights[v]);
  }
  return out;
}

QuantumState QuantumState::tensor(const QuantumState& other) const {
  RegisterLayout joined = layout_.concat(other.layout_);
  const std::uint64_t low = other.amplitudes_.size();
  std::vector<Amplitude> amps(joined.dimension());
  for (std::uint64_t hi = 0; hi < amplitudes_.size(); ++hi) {
    if (amplitudes_[hi] == Amplitude{}) continue;
    for (std::uint64_t lo = 0; lo < low; ++lo) {
      amps[hi * low + lo] = amplitudes_[hi] * other.amplitudes_[lo];
    }
  }
  return QuantumState(std::move(joined), std::move(amps));
}

}  // namespace qamem
