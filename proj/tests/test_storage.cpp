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

#include <algorithm>
#include <cmath>

#include "gtest/gtest.h"
#include "qamem/errors.hpp"
#include "qamem/oracle.hpp"
#include "test_helpers.hpp"

using namespace qamem;

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752;

QuantumState run_steps(const PatternSet& set, std::size_t last_step, StoragePath path,
                       StorageTrace* trace = nullptr) {
  QuantumState state = storage_initial_state(set[0], path);
  for (std::size_t i = 1; i <= last_step; ++i) {
    if (i > 1) load_pattern(state, set[i - 2], set[i - 1]);
    store_step(state, set[i - 1], i, set.p(), trace);
  }
  return state;
}

}  // namespace

TEST(Store, TwoPatterns) {
  const QuantumState m = store(PatternSet::from_strings({"01", "10"}));
  EXPECT_NEAR(m.amplitude(0b01).real(), kInvSqrt2, 1e-9);
  EXPECT_NEAR(m.amplitude(0b10).real(), kInvSqrt2, 1e-9);
  EXPECT_NEAR(std::abs(m.amplitude(0b00)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(m.amplitude(0b11)), 0.0, 1e-12);
}

TEST(Store, SinglePattern) {
  const QuantumState m = store(PatternSet::from_strings({"1"}));
  EXPECT_NEAR(std::abs(m.amplitude(1) - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(m.amplitude(0)), 0.0, 1e-12);
}

TEST(Store, FullCapacityEqualsHadamardProduct) {
  const QuantumState m = store(tests::all_patterns(3));
  QuantumState h = QuantumState::basis(RegisterLayout({{"m", 3}}), "000");
  for (std::size_t q = 0; q < 3; ++q) h.apply_1q(q, gate_hadamard());
  EXPECT_LT(tests::max_deviation(m.amplitudes(), h.amplitudes()), 1e-9);
  EXPECT_NEAR(m.amplitude(5).real(), 0.35355339, 1e-8);
}

TEST(Store, RejectsEmptyAndDuplicateSets) {
  EXPECT_THROW(PatternSet({}), InvalidInput);
  EXPECT_THROW(PatternSet::from_strings({"00", "00"}), InvalidInput);
}

TEST(StoreStep, FirstOfTwo) {
  const PatternSet set = PatternSet::from_strings({"01", "10"});
  const QuantumState s = run_steps(set, 1, StoragePath::reference);
  const auto& layout = s.layout();
  const auto stored = layout.index_of({{"p", "01"}, {"u", "00"}, {"m", "01"}});
  const auto processing = layout.index_of({{"p", "01"}, {"u", "01"}, {"m", "00"}});
  EXPECT_NEAR(s.amplitude(stored).real(), kInvSqrt2, 1e-12);
  EXPECT_NEAR(s.amplitude(processing).real(), kInvSqrt2, 1e-12);
}

TEST(StoreStep, FirstOfThree) {
  const PatternSet set = PatternSet::from_strings({"001", "010", "100"});
  StorageTrace trace;
  const QuantumState s = run_steps(set, 1, StoragePath::reference, &trace);
  const auto processing = s.layout().index_of({{"p", "001"}, {"u", "01"}, {"m", "000"}});
  EXPECT_NEAR(s.amplitude(processing).real(), 0.81649658, 1e-8);
  ASSERT_EQ(trace.steps.size(), 1u);
  EXPECT_NEAR(trace.steps[0].processing_amplitude.real(), std::sqrt(2.0 / 3.0), 1e-12);
  EXPECT_NEAR(trace.steps[0].stored_amplitude.real(), 1 / std::sqrt(3.0), 1e-12);
}

TEST(StoreStep, LastStepEmptiesProcessingBranch) {
  const PatternSet set = PatternSet::from_strings({"011", "101", "110", "000"});
  for (StoragePath path : {StoragePath::reference, StoragePath::classical_pattern}) {
    const QuantumState s = run_steps(set, set.p(), path);
    const std::size_t u1 = s.layout().qubit("u", 0);
    const std::size_t u2 = s.layout().qubit("u", 1);
    EXPECT_NEAR(s.branch_probability(u1, 0), 1.0, 1e-12);
    EXPECT_NEAR(s.branch_probability(u2, 0), 1.0, 1e-12);
  }
}

TEST(StoreStep, TraceFollowsClosedForm) {
  std::mt19937_64 gen(17);
  for (int rep = 0; rep < 10; ++rep) {
    const PatternSet set = tests::random_set(gen, 4);
    StorageTrace trace;
    store(set, StoreOptions{StoragePath::reference, kDefaultMaxQubits, &trace});
    ASSERT_EQ(trace.steps.size(), set.p());
    const double p = static_cast<double>(set.p());
    for (const auto& snap : trace.steps) {
      const double i = static_cast<double>(snap.i);
      EXPECT_NEAR(std::abs(snap.processing_amplitude - std::sqrt((p - i) / p)), 0.0, 1e-9);
      EXPECT_NEAR(std::abs(snap.stored_amplitude - 1 / std::sqrt(p)), 0.0, 1e-9);
      EXPECT_NEAR(snap.stored_weight, i / p, 1e-9);
    }
  }
}

TEST(StoreStep, RejectsMalformedCalls) {
  const PatternSet set = PatternSet::from_strings({"01", "10"});
  QuantumState s = storage_initial_state(set[0], StoragePath::reference);
  EXPECT_THROW(store_step(s, set[0], 0, 2), InvalidInput);
  EXPECT_THROW(store_step(s, set[0], 3, 2), InvalidInput);
  EXPECT_THROW(store_step(s, Pattern("011"), 1, 2), InvalidInput);
  // pattern register holds 01, not 10
  EXPECT_THROW(store_step(s, set[1], 1, 2), InvalidInput);
  QuantumState plain = QuantumState::basis(RegisterLayout({{"m", 2}}), "00");
  EXPECT_THROW(store_step(plain, set[0], 1, 2), InvalidInput);
}

TEST(StoragePaths, ReferenceAndClassicalAgree) {
  std::mt19937_64 gen(23);
  for (int rep = 0; rep < 30; ++rep) {
    std::uniform_int_distribution<std::size_t> width(1, 6);
    const PatternSet set = tests::random_set(gen, width(gen));
    const QuantumState a = store(set, StoreOptions{StoragePath::reference});
    const QuantumState b = store(set, StoreOptions{StoragePath::classical_pattern});
    EXPECT_LT(tests::max_deviation(a.amplitudes(), b.amplitudes()), 1e-12);
  }
}

TEST(StoragePaths, ClassicalPathReachesBeyondReferenceLimit) {
  const PatternSet set = PatternSet::from_strings({"0000000000", "1111111111", "0101010101"});
  const QuantumState m = store(set);
  EXPECT_EQ(m.num_qubits(), 10u);
  EXPECT_LT(verify_memory(m, set), 1e-9);
}

TEST(VerifyMemory, Examples) {
  const PatternSet one = PatternSet::from_strings({"1"});
  EXPECT_NEAR(verify_memory(QuantumState::basis(RegisterLayout({{"m", 1}}), "0"), one), 1.0, 1e-15);
  EXPECT_LT(verify_memory(store(one), one), 1e-12);

  std::mt19937_64 gen(29);
  for (int rep = 0; rep < 25; ++rep) {
    std::uniform_int_distribution<std::size_t> width(1, 6);
    const PatternSet set = tests::random_set(gen, width(gen));
    EXPECT_LT(verify_memory(store(set), set), 1e-9);
  }
  EXPECT_THROW(verify_memory(QuantumState::basis(RegisterLayout({{"m", 2}}), "00"), one),
               InvalidInput);
}

TEST(Store, MatchesDirectConstructionAndIsRealNonNegative) {
  std::mt19937_64 gen(31);
  for (int rep = 0; rep < 25; ++rep) {
    std::uniform_int_distribution<std::size_t> width(1, 6);
    const PatternSet set = tests::random_set(gen, width(gen));
    const QuantumState m = store(set);
    const auto want = oracle::expected_memory(set);
    EXPECT_LT(tests::max_deviation(m.amplitudes(), want), 1e-9);
    for (const auto& a : m.amplitudes()) {
      EXPECT_LT(std::abs(a.imag()), 1e-9);
      EXPECT_GT(a.real(), -1e-9);
    }
  }
}
