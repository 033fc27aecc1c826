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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qamem/pattern.hpp"
#include "qamem/rng.hpp"

namespace qamem {

/// Denominator of the phase unit pi/(2 * denominator) under a mask.
enum class MaskScale {
  /// Keep the full pattern length n.
  pattern_length,
  /// Use the number of known bits q.
  known_bits,
};

/// Distance table f[0..n] with f(0) = 0, f(n) = n and 0 <= f(d) <= n.
using DistanceTable = std::vector<int>;

/// Throws InvalidInput unless `f` is a valid distance table for length n.
void validate_distance_table(const DistanceTable& f, std::size_t n);

/// Retrieval input: a (possibly partially known) pattern, an optional mask of
/// known positions, and an optional distance remapping.
class Query {
 public:
  /// `input` is over {0,1,?}. A '?' marks an unknown bit; it is filled from
  /// `fill_rng` and must sit at a mask-0 position. Without an explicit mask,
  /// one is derived from the '?' positions.
  static Query make(const std::string& input, std::optional<std::string> mask = std::nullopt,
                    std::optional<DistanceTable> f_table = std::nullopt,
                    Rng* fill_rng = nullptr, MaskScale scale = MaskScale::pattern_length);

  static Query exact(const Pattern& input) { return make(input.str()); }

  std::size_t n() const { return input_.size(); }
  /// Input with every unknown bit filled.
  const Pattern& input() const { return input_; }
  /// Input as given, '?' included.
  const std::string& raw_input() const { return raw_; }
  bool was_filled() const { return raw_ != input_.str(); }
  const std::optional<std::string>& mask() const { return mask_; }
  const std::optional<DistanceTable>& f_table() const { return f_table_; }
  MaskScale mask_scale() const { return scale_; }

  bool known(std::size_t position) const { return !mask_ || (*mask_)[position] == '1'; }
  std::size_t known_count() const;
  /// n, or q under MaskScale::known_bits.
  std::size_t phase_denominator() const;

 private:
  Query(std::string raw, Pattern input) : raw_(std::move(raw)), input_(std::move(input)) {}

  std::string raw_;
  Pattern input_;
  std::optional<std::string> mask_;
  std::optional<DistanceTable> f_table_;
  MaskScale scale_ = MaskScale::pattern_length;
};

enum class ReportSource { gate_level, analytic };

/// Control-qubit probabilities and the postselected (c = 0) pattern distribution.
struct DistributionReport {
  std::size_t n = 0;
  std::size_t p = 0;
  std::string input;
  std::optional<std::string> filled_input;
  std::optional<std::string> mask;
  std::optional<DistanceTable> f_table;
  double p0 = 0.0;
  double p1 = 0.0;
  /// Keyed by every stored pattern; empty when the input is unrecognizable.
  std::map<std::string, double> per_pattern;
  bool recognizable = true;
  ReportSource source = ReportSource::gate_level;
};

/// p0 at or below this is treated as "control never reads 0".
inline constexpr double kUnrecognizableP0 = 1e-15;

/// Shared header fields for a report over (set, query).
DistributionReport report_header(const PatternSet& set, const Query& query, ReportSource source);

/// Largest absolute difference between two reports' p0, p1 and per_pattern
/// values. Key sets must agree; a mismatch counts as deviation 1.
double max_report_deviation(const DistributionReport& a, const DistributionReport& b);

}  // namespace qamem
