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

#include "qamem/query.hpp"

#include <algorithm>
#include <cmath>

#include "qamem/errors.hpp"

namespace qamem {

void validate_distance_table(const DistanceTable& f, std::size_t n) {
  if (f.size() != n + 1) {
    throw InvalidInput("distance table needs n+1 = " + std::to_string(n + 1) + " entries, got " +
                       std::to_string(f.size()));
  }
  if (f.front() != 0) throw InvalidInput("distance table must satisfy f(0) = 0");
  if (f.back() != static_cast<int>(n)) {
    throw InvalidInput("distance table must satisfy f(n) = n = " + std::to_string(n));
  }
  for (std::size_t d = 0; d <= n; ++d) {
    if (f[d] < 0 || f[d] > static_cast<int>(n)) {
      throw InvalidInput("distance table entry f(" + std::to_string(d) + ") = " +
                         std::to_string(f[d]) + " outside 0..n");
    }
  }
}

Query Query::make(const std::string& input, std::optional<std::string> mask,
                  std::optional<DistanceTable> f_table, Rng* fill_rng, MaskScale scale) {
  if (input.empty()) throw InvalidInput("query input must not be empty");
  if (input.find_first_not_of("01?") != std::string::npos) {
    throw InvalidInput("query input '" + input + "' may only contain 0, 1 and ?");
  }
  const std::size_t n = input.size();
  const bool has_unknown = input.find('?') != std::string::npos;
  if (mask) {
    if (mask->size() != n) {
      throw InvalidInput("mask length " + std::to_string(mask->size()) +
                         " differs from input length " + std::to_string(n));
    }
    if (mask->find_first_not_of("01") != std::string::npos) {
      throw InvalidInput("mask may only contain 0 and 1");
    }
    if (mask->find('1') == std::string::npos) throw InvalidInput("mask has no known bits");
    for (std::size_t k = 0; k < n; ++k) {
      if (input[k] == '?' && (*mask)[k] == '1') {
        throw InvalidInput("input position " + std::to_string(k) + " is '?' but the mask marks it known");
      }
    }
  } else if (has_unknown) {
    std::string derived(n, '1');
    for (std::size_t k = 0; k < n; ++k) {
      if (input[k] == '?') derived[k] = '0';
    }
    if (derived.find('1') == std::string::npos) throw InvalidInput("input has no known bits");
    mask = std::move(derived);
  }
  std::string filled = input;
  if (has_unknown) {
    if (fill_rng == nullptr) {
      throw InvalidInput("input has unknown bits but no seeded generator was given to fill them");
    }
    for (char& c : filled) {
      if (c == '?') c = fill_rng->uniform() < 0.5 ? '0' : '1';
    }
  }
  if (f_table) {
    validate_distance_table(*f_table, n);
    if (scale == MaskScale::known_bits && mask) {
      throw InvalidInput("a distance table cannot be combined with known-bit phase scaling");
    }
  }
  Query q(input, Pattern(std::move(filled)));
  q.mask_ = std::move(mask);
  q.f_table_ = std::move(f_table);
  q.scale_ = scale;
  return q;
}

std::size_t Query::known_count() const {
  if (!mask_) return n();
  return static_cast<std::size_t>(std::count(mask_->begin(), mask_->end(), '1'));
}

std::size_t Query::phase_denominator() const {
  return scale_ == MaskScale::known_bits ? known_count() : n();
}

DistributionReport report_header(const PatternSet& set, const Query& query, ReportSource source) {
  if (query.n() != set.n()) {
    throw InvalidInput("query length " + std::to_string(query.n()) +
                       " does not match pattern length " + std::to_string(set.n()));
  }
  DistributionReport r;
  r.n = set.n();
  r.p = set.p();
  r.input = query.raw_input();
  if (query.was_filled()) r.filled_input = query.input().str();
  r.mask = query.mask();
  r.f_table = query.f_table();
  r.source = source;
  return r;
}

double max_report_deviation(const DistributionReport& a, const DistributionReport& b) {
  double worst = std::max(std::abs(a.p0 - b.p0), std::abs(a.p1 - b.p1));
  if (a.per_pattern.size() != b.per_pattern.size()) return std::max(worst, 1.0);
  for (const auto& [key, value] : a.per_pattern) {
    auto it = b.per_pattern.find(key);
    if (it == b.per_pattern.end()) return std::max(worst, 1.0);
    worst = std::max(worst, std::abs(value - it->second));
  }
  return worst;
}

}  // namespace qamem
