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

#include "qamem/retrieval.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>

#include "qamem/errors.hpp"
#include "qamem/oracle.hpp"

namespace qamem {

namespace {

void check_lengths(const PatternSet& set, const Query& query) {
  if (query.n() != set.n()) {
    throw InvalidInput("query length " + std::to_string(query.n()) +
                       " does not match pattern length " + std::to_string(set.n()));
  }
}

std::size_t control_qubit(const QuantumState& state) {
  const auto& layout = state.layout();
  if (!layout.has("m") || !layout.has("c") || layout.width("c") != 1) {
    throw InvalidInput("state is not a retrieval-circuit state (needs registers m:n and c:1)");
  }
  return layout.qubit("c", 0);
}

void check_input_fits(const QuantumState& state, const Pattern& input) {
  control_qubit(state);
  const auto& layout = state.layout();
  if (layout.width("m") != input.size()) {
    throw InvalidInput("input length " + std::to_string(input.size()) +
                       " does not match memory register width " +
                       std::to_string(layout.width("m")));
  }
  if (layout.has("i") && layout.width("i") != input.size()) {
    throw InvalidInput("input register width does not match the input");
  }
}

void xor_input_into_memory(QuantumState& state, const Pattern& input, std::size_t k) {
  const auto& layout = state.layout();
  const std::size_t m_k = layout.qubit("m", k);
  if (layout.has("i")) {
    const std::size_t controls[] = {layout.qubit("i", k)};
    state.apply_multi_controlled_not(controls, m_k);
  } else if (input.bit(k)) {
    state.apply_1q(m_k, gate_not());
  }
}

std::uint64_t support_mask(const QuantumState& state, const PhaseSpec& spec) {
  const auto& layout = state.layout();
  std::uint64_t mask = 0;
  for (std::size_t pos : spec.support) mask |= layout.qubit_mask(layout.qubit("m", pos));
  return mask;
}

}  // namespace

std::vector<std::size_t> masked_phase_support(const Query& query) {
  std::vector<std::size_t> support;
  for (std::size_t k = 0; k < query.n(); ++k) {
    if (query.known(k)) support.push_back(k);
  }
  if (support.empty()) throw InvalidInput("mask has no known bits");
  return support;
}

PhaseSpec phase_spec(const Query& query) {
  return PhaseSpec{masked_phase_support(query), query.phase_denominator(), query.f_table()};
}

RegisterLayout retrieval_layout(std::size_t n, RetrievalPath path, std::size_t max_qubits) {
  if (n == 0) throw InvalidInput("pattern length must be >= 1");
  if (path == RetrievalPath::reference) {
    if (n > kReferenceRetrievalMaxN) {
      throw InvalidInput("reference retrieval path supports n <= " +
                         std::to_string(kReferenceRetrievalMaxN));
    }
    return RegisterLayout({{"i", n}, {"m", n}, {"c", 1}}, max_qubits);
  }
  return RegisterLayout({{"m", n}, {"c", 1}}, max_qubits);
}

QuantumState prepare_retrieval_state(const PatternSet& set, const Query& query,
                                     const RetrievalOptions& options) {
  check_lengths(set, query);
  const std::size_t n = set.n();
  // Validates the qubit budget before any work is done.
  retrieval_layout(n, options.path, options.max_qubits);

  QuantumState memory = store(set, StoreOptions{options.storage, options.max_qubits, nullptr});
  QuantumState control = QuantumState::basis(RegisterLayout({{"c", 1}}, options.max_qubits), "0");
  control.apply_1q(0, gate_hadamard());
  if (options.path == RetrievalPath::reference) {
    QuantumState input =
        QuantumState::basis(RegisterLayout({{"i", n}}, options.max_qubits), query.input().str());
    return input.tensor(memory).tensor(control);
  }
  return memory.tensor(control);
}

void apply_compare(QuantumState& state, const Pattern& input) {
  check_input_fits(state, input);
  const Gate1Q x = gate_not();
  for (std::size_t k = 0; k < input.size(); ++k) {
    xor_input_into_memory(state, input, k);
    state.apply_1q(state.layout().qubit("m", k), x);
  }
}

void apply_uncompare(QuantumState& state, const Pattern& input) {
  check_input_fits(state, input);
  const Gate1Q x = gate_not();
  for (std::size_t k = input.size(); k-- > 0;) {
    state.apply_1q(state.layout().qubit("m", k), x);
    xor_input_into_memory(state, input, k);
  }
}

void apply_phase_decomposed(QuantumState& state, const PhaseSpec& spec) {
  const std::size_t c = control_qubit(state);
  if (spec.f_table) {
    throw InvalidInput("the U / CU^-2 decomposition only realizes the identity distance map");
  }
  const auto& layout = state.layout();
  const Gate1Q u = gate_u(spec.denominator);
  const Gate1Q u_inv_sq = u.adjoint() * u.adjoint();
  for (std::size_t pos : spec.support) state.apply_1q(layout.qubit("m", pos), u);
  for (std::size_t pos : spec.support) {
    state.apply_controlled_1q(c, layout.qubit("m", pos), u_inv_sq);
  }
}

void phase_operator_direct(QuantumState& state, const PhaseSpec& spec) {
  const std::size_t c = control_qubit(state);
  const auto& layout = state.layout();
  const std::size_t n = layout.width("m");
  if (spec.f_table) validate_distance_table(*spec.f_table, n);
  if (spec.denominator == 0) throw InvalidInput("phase denominator must be >= 1");

  // Phase factors for (distance, control) pairs.
  const std::size_t max_d = spec.support.size();
  std::vector<Amplitude> kick0(max_d + 1);
  std::vector<Amplitude> kick1(max_d + 1);
  for (std::size_t d = 0; d <= max_d; ++d) {
    const double theta = spec.f_table ? static_cast<double>((*spec.f_table)[d])
                                      : static_cast<double>(d);
    const double angle = std::numbers::pi * theta / (2.0 * static_cast<double>(spec.denominator));
    kick0[d] = std::polar(1.0, angle);
    kick1[d] = std::polar(1.0, -angle);
  }
  const std::uint64_t mask = support_mask(state, spec);
  const std::uint64_t cbit = layout.qubit_mask(c);
  auto amps = state.mutable_amplitudes();
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    const auto zeros = static_cast<std::size_t>(std::popcount(~i & mask));
    amps[i] *= (i & cbit) ? kick1[zeros] : kick0[zeros];
  }
}

void apply_output_hadamard(QuantumState& state) {
  state.apply_1q(control_qubit(state), gate_hadamard());
}

QuantumState run_circuit(const PatternSet& set, const Query& query,
                         const RetrievalOptions& options) {
  QuantumState state = prepare_retrieval_state(set, query, options);
  const PhaseSpec spec = phase_spec(query);
  apply_compare(state, query.input());
  if (options.phase == PhaseMethod::automatic && !spec.f_table) {
    apply_phase_decomposed(state, spec);
  } else {
    phase_operator_direct(state, spec);
  }
  apply_uncompare(state, query.input());
  apply_output_hadamard(state);
  state.check_normalized();
  return state;
}

DistributionReport report_from_state(const QuantumState& state, const PatternSet& set,
                                     const Query& query) {
  DistributionReport r = report_header(set, query, ReportSource::gate_level);
  const std::size_t c = control_qubit(state);
  const auto& layout = state.layout();
  if (layout.width("m") != set.n()) throw InvalidInput("memory register width differs from n");
  state.check_normalized();

  r.p0 = state.branch_probability(c, 0);
  r.p1 = state.branch_probability(c, 1);
  r.recognizable = r.p0 > kUnrecognizableP0;
  if (r.recognizable) {
    std::vector<double> weight(std::size_t{1} << set.n(), 0.0);
    const auto amps = state.amplitudes();
    const std::uint64_t cbit = layout.qubit_mask(c);
    const auto memory = layout.field("m");
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
      if ((i & cbit) == 0) weight[memory(i)] += std::norm(amps[i]);
    }
    for (const auto& pat : set.patterns()) r.per_pattern[pat.str()] = weight[pat.to_index()] / r.p0;
  }
  return r;
}

DistributionReport gate_level_report(const PatternSet& set, const Query& query,
                                     const RetrievalOptions& options) {
  return report_from_state(run_circuit(set, query, options), set, query);
}

std::pair<double, double> control_probabilities(const PatternSet& set, const Query& query,
                                                const RetrievalOptions& options) {
  const QuantumState state = run_circuit(set, query, options);
  const std::size_t c = control_qubit(state);
  return {state.branch_probability(c, 0), state.branch_probability(c, 1)};
}

RetrievalOutcome retrieve_once(const PatternSet& set, const Query& query, Rng& rng,
                               const RetrievalOptions& options, std::size_t trial_index) {
  QuantumState state = run_circuit(set, query, options);
  RetrievalOutcome out;
  out.trial_index = trial_index;
  out.control_bit = state.measure_qubit(control_qubit(state), rng);
  if (out.control_bit == 0) {
    Pattern found(state.measure_register("m", rng));
    if (!set.contains(found)) {
      throw NumericalError("memory measurement returned unstored pattern '" + found.str() + "'");
    }
    out.retrieved = std::move(found);
  }
  return out;
}

RecognitionResult recognize(const PatternSet& set, const Query& query, std::size_t threshold,
                            Rng& rng, const RetrievalOptions& options) {
  if (threshold == 0) throw InvalidInput("threshold must be >= 1");
  check_lengths(set, query);
  for (std::size_t t = 1; t <= threshold; ++t) {
    RetrievalOutcome outcome = retrieve_once(set, query, rng, options, t);
    if (outcome.control_bit == 0) return RecognitionResult{true, t, std::move(outcome)};
  }
  return RecognitionResult{false, threshold, std::nullopt};
}

std::vector<double> self_recognition_probabilities(const PatternSet& set) {
  const double n = static_cast<double>(set.n());
  const double p = static_cast<double>(set.p());
  std::vector<std::uint64_t> index(set.p());
  for (std::size_t k = 0; k < set.p(); ++k) index[k] = set[k].to_index();
  std::vector<double> out(set.p());
  for (std::size_t k = 0; k < set.p(); ++k) {
    double acc = 0.0;
    for (std::size_t l = 0; l < set.p(); ++l) {
      const double d = static_cast<double>(std::popcount(index[k] ^ index[l]));
      const double c = std::cos(std::numbers::pi * d / (2.0 * n));
      acc += c * c;
    }
    out[k] = acc / p;
  }
  return out;
}

std::size_t threshold_for(double probability) {
  if (!(probability > 0.0)) throw InvalidInput("threshold needs a positive probability");
  const double t = std::floor(1.0 / probability + 0.5);
  return std::max<std::size_t>(1, static_cast<std::size_t>(t));
}

std::size_t choose_threshold(const PatternSet& set) {
  const auto probs = self_recognition_probabilities(set);
  return threshold_for(*std::min_element(probs.begin(), probs.end()));
}

WorstCaseReport worst_case_threshold_scaling(std::size_t n, std::size_t x, bool gate_level) {
  const oracle::WorstCaseScenario scenario = oracle::worst_case_set(n, x);
  WorstCaseReport r;
  r.n = n;
  r.x = x;
  r.p = scenario.set.p();

  // The isolated input sees itself at distance 0 and C(n, k) patterns at
  // distance n - k; the k = 0 group contributes cos^2(pi/2) = 0.
  const double nd = static_cast<double>(n);
  double sum = 1.0;
  double binom = 1.0;
  for (std::size_t k = 1; k <= x; ++k) {
    binom = binom * static_cast<double>(n - k + 1) / static_cast<double>(k);
    const double c = std::cos(std::numbers::pi * static_cast<double>(n - k) / (2.0 * nd));
    sum += binom * c * c;
  }
  r.p0_exact = sum / static_cast<double>(r.p);
  r.threshold = threshold_for(r.p0_exact);
  r.asymptotic_bound = 1.0 / static_cast<double>(r.p) + std::numbers::pi * std::numbers::pi / (4.0 * nd * nd);
  r.bound_holds = r.p0_exact > r.asymptotic_bound;
  if (gate_level) {
    RetrievalOptions options;
    options.storage = StoragePath::classical_pattern;
    r.p0_gate_level = control_probabilities(scenario.set, Query::exact(scenario.isolated), options).first;
  }
  return r;
}

ExperimentCounts run_experiment(const PatternSet& set, const Query& query, std::size_t trials,
                                std::uint64_t seed, const RetrievalOptions& options,
                                std::size_t workers) {
  if (trials == 0) throw InvalidInput("experiment needs at least one trial");
  check_lengths(set, query);
  if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());
  workers = std::min(workers, trials);

  struct Partial {
    std::size_t control_zero = 0;
    std::vector<std::size_t> retrieved;
    std::exception_ptr error;
  };
  std::vector<Partial> partials(workers);
  std::map<std::string, std::size_t> slot;
  for (std::size_t k = 0; k < set.p(); ++k) slot.emplace(set[k].str(), k);

  auto work = [&](std::size_t w) {
    Partial& part = partials[w];
    part.retrieved.assign(set.p(), 0);
    const std::size_t begin = trials * w / workers;
    const std::size_t end = trials * (w + 1) / workers;
    try {
      for (std::size_t t = begin; t < end; ++t) {
        Rng rng = Rng::stream(seed, t);
        const RetrievalOutcome out = retrieve_once(set, query, rng, options, t + 1);
        if (out.control_bit == 0) {
          ++part.control_zero;
          ++part.retrieved[slot.at(out.retrieved->str())];
        }
      }
    } catch (...) {
      part.error = std::current_exception();
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }

  ExperimentCounts counts;
  counts.trials = trials;
  counts.seed = seed;
  for (const auto& pat : set.patterns()) counts.retrieved[pat.str()] = 0;
  for (const auto& part : partials) {
    if (part.error) std::rethrow_exception(part.error);
    counts.control_zero += part.control_zero;
    for (std::size_t k = 0; k < set.p(); ++k) counts.retrieved[set[k].str()] += part.retrieved[k];
  }
  return counts;
}

}  // namespace qamem
