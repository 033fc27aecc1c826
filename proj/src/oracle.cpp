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

#include "qamem/oracle.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qamem/errors.hpp"

namespace qamem::oracle {

namespace {

std::uint64_t parse_binary(const std::string& bits) {
  std::uint64_t v = 0;
  for (char c : bits) v = v * 2 + static_cast<std::uint64_t>(c - '0');
  return v;
}

double phase_angle(const Query& query, const Pattern& stored) {
  const double theta = static_cast<double>(effective_distance(query, stored));
  return std::numbers::pi * theta / (2.0 * static_cast<double>(query.phase_denominator()));
}

}  // namespace

std::size_t hamming(const Pattern& a, const Pattern& b) {
  if (a.size() != b.size()) {
    throw InvalidInput("hamming distance needs equal lengths (" + std::to_string(a.size()) +
                       " vs " + std::to_string(b.size()) + ")");
  }
  std::size_t d = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a.str()[k] != b.str()[k]) ++d;
  }
  return d;
}

std::size_t effective_distance(const Query& query, const Pattern& stored) {
  const std::string& in = query.input().str();
  const std::string& st = stored.str();
  if (in.size() != st.size()) throw InvalidInput("query and pattern lengths differ");
  std::size_t d = 0;
  for (std::size_t k = 0; k < in.size(); ++k) {
    if (query.known(k) && in[k] != st[k]) ++d;
  }
  if (query.f_table()) return static_cast<std::size_t>((*query.f_table())[d]);
  return d;
}

DistributionReport analytic_report(const PatternSet& set, const Query& query) {
  DistributionReport r = report_header(set, query, ReportSource::analytic);
  const double p = static_cast<double>(set.p());
  std::vector<double> weight(set.p());
  double sum = 0.0;
  for (std::size_t k = 0; k < set.p(); ++k) {
    const double c = std::cos(phase_angle(query, set[k]));
    weight[k] = c * c;
    sum += weight[k];
  }
  r.p0 = sum / p;
  double sin_sum = 0.0;
  for (std::size_t k = 0; k < set.p(); ++k) {
    const double s = std::sin(phase_angle(query, set[k]));
    sin_sum += s * s;
  }
  r.p1 = sin_sum / p;
  r.recognizable = r.p0 > kUnrecognizableP0;
  if (r.recognizable) {
    for (std::size_t k = 0; k < set.p(); ++k) r.per_pattern[set[k].str()] = weight[k] / sum;
  }
  return r;
}

std::vector<Amplitude> expected_memory(const PatternSet& set) {
  if (set.n() > 30) throw InvalidInput("expected_memory supports n <= 30");
  std::vector<Amplitude> amps(std::size_t{1} << set.n());
  const double a = 1.0 / std::sqrt(static_cast<double>(set.p()));
  for (const auto& pat : set.patterns()) amps[parse_binary(pat.str())] = a;
  return amps;
}

std::size_t worst_case_size(std::size_t n, std::size_t x) {
  std::size_t total = 1;
  std::size_t binom = 1;
  for (std::size_t k = 0; k <= x; ++k) {
    if (k > 0) binom = binom * (n - k + 1) / k;
    total += binom;
  }
  return total;
}

WorstCaseScenario worst_case_set(std::size_t n, std::size_t x, std::optional<Pattern> isolated) {
  if (x == 0 || x >= n) {
    throw InvalidInput("worst-case scenario needs 1 <= x < n (got n=" + std::to_string(n) +
                       ", x=" + std::to_string(x) + ")");
  }
  if (n > 24) throw InvalidInput("worst-case scenario supports n <= 24");
  Pattern centre = isolated.value_or(Pattern(std::string(n, '0')));
  if (centre.size() != n) throw InvalidInput("isolated pattern length differs from n");

  std::vector<Pattern> pats{centre};
  for (std::size_t d = n; d + x >= n && d > 0; --d) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
      std::string bits(n, '0');
      for (std::size_t k = 0; k < n; ++k) bits[k] = ((v >> (n - 1 - k)) & 1U) ? '1' : '0';
      Pattern candidate(std::move(bits));
      if (hamming(candidate, centre) == d) pats.push_back(std::move(candidate));
    }
  }
  return WorstCaseScenario{n, x, std::move(centre), PatternSet(std::move(pats))};
}

double brute_force_measurement_check(const PatternSet& set, const Query& query,
                                     const QuantumState& circuit_state) {
  const std::size_t n = set.n();
  if (n > 8) throw InvalidInput("brute-force check supports n <= 8");
  if (query.n() != n) throw InvalidInput("query length does not match the pattern set");

  const auto& regs = circuit_state.layout().registers();
  const bool with_input = regs.size() == 3;
  const bool shape_ok =
      with_input ? (regs[0].name == "i" && regs[0].width == n && regs[1].name == "m" &&
                    regs[1].width == n && regs[2].name == "c" && regs[2].width == 1)
                 : (regs.size() == 2 && regs[0].name == "m" && regs[0].width == n &&
                    regs[1].name == "c" && regs[1].width == 1);
  if (!shape_ok) throw InvalidInput("circuit state must have layout (m, c) or (i, m, c)");

  const std::size_t qubits = with_input ? 2 * n + 1 : n + 1;
  std::vector<Amplitude> want(std::size_t{1} << qubits);
  const double norm = 1.0 / std::sqrt(static_cast<double>(set.p()));
  const std::string prefix = with_input ? query.input().str() : std::string();
  for (const auto& pat : set.patterns()) {
    const double phi = phase_angle(query, pat);
    want[parse_binary(prefix + pat.str() + "0")] = Amplitude(norm * std::cos(phi), 0.0);
    want[parse_binary(prefix + pat.str() + "1")] = Amplitude(0.0, norm * std::sin(phi));
  }
  const auto got = circuit_state.amplitudes();
  double worst = 0.0;
  for (std::size_t k = 0; k < want.size(); ++k) worst = std::max(worst, std::abs(got[k] - want[k]));
  return worst;
}

}  // namespace qamem::oracle
